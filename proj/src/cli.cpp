#include "shelflab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shelflab/montecarlo.hpp"
#include "shelflab/oracle.hpp"
#include "shelflab/serialize.hpp"
#include "shelflab/theory.hpp"

namespace shelflab::cli {

namespace {

std::uint64_t default_budget() {
    if (const char* env = std::getenv("SHELF_LAB_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("SHELF_LAB_BUDGET is not a valid integer: " +
                                        std::string(env));
        }
    }
    return 1'000'000;
}

void write_payload(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << payload;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

ShuffleSpec make_spec(std::uint64_t n, std::uint32_t m, const std::string& bias_path) {
    if (bias_path.empty()) return ShuffleSpec(n, m);
    return ShuffleSpec(n, m, load_bias_file(bias_path, m));
}

// ---- formulas ----

struct FormulaValue {
    std::optional<Rational> exact;
    std::optional<double> approx;
};

struct FormulaSpec {
    const char* name;
    const char* params;  // human-readable parameter list
};

constexpr FormulaSpec kFormulas[] = {
    {"mean_inversions", "n"},
    {"var_A", "n, m"},
    {"var_C", "n, m"},
    {"cov_printed", "n, m"},
    {"cov_corrected", "n, m"},
    {"var_total_printed", "n, m"},
    {"var_total_components", "n, m"},
    {"zeta1_sq", "m"},
    {"descent_mean", "n"},
    {"descent_var_formula", "n, m"},
    {"limit_var_descents_claimed", "m"},
    {"limit_var_descents_coupling", ""},
    {"unimodal_variance_claimed", "n"},
    {"even_pile_probability", "m [, bias]"},
    {"h1_mean", "m"},
    {"h1_second_moment", "m"},
    {"h1_abs_third_moment", "m"},
    {"h1_third_moment_cap", ""},
    {"kd_bound_constant", ""},
    {"kd_bound_threshold_n", ""},
    {"chen_shao_inversions", "n, m"},
    {"chen_shao_inversions_exact", "n, m"},
    {"slutsky_error", "n, m"},
};

std::string formula_list() {
    std::string out = "available formulas:\n";
    for (const auto& f : kFormulas) {
        out += "  ";
        out += f.name;
        if (f.params[0]) {
            out += " (";
            out += f.params;
            out += ")";
        }
        out += "\n";
    }
    return out;
}

std::uint64_t need_n(const std::optional<std::uint64_t>& n, const std::string& name) {
    if (!n) throw std::invalid_argument("formula '" + name + "' requires --n");
    return *n;
}

std::uint32_t need_m(const std::optional<std::uint32_t>& m, const std::string& name) {
    if (!m) throw std::invalid_argument("formula '" + name + "' requires --m");
    return *m;
}

FormulaValue evaluate_formula(const std::string& name, std::optional<std::uint64_t> n,
                              std::optional<std::uint32_t> m, const std::string& bias_path) {
    FormulaValue v;
    if (name == "mean_inversions") {
        v.exact = theory::mean_inversions(need_n(n, name));
    } else if (name == "var_A") {
        v.exact = theory::inversion_moments(need_n(n, name), need_m(m, name)).var_A;
    } else if (name == "var_C") {
        v.exact = theory::inversion_moments(need_n(n, name), need_m(m, name)).var_C;
    } else if (name == "cov_printed") {
        v.exact = theory::inversion_moments(need_n(n, name), need_m(m, name)).cov_printed;
    } else if (name == "cov_corrected") {
        v.exact = theory::inversion_moments(need_n(n, name), need_m(m, name)).cov_corrected;
    } else if (name == "var_total_printed") {
        v.exact = theory::inversion_moments(need_n(n, name), need_m(m, name)).var_total_printed;
    } else if (name == "var_total_components") {
        v.exact =
            theory::inversion_moments(need_n(n, name), need_m(m, name)).var_total_from_components;
    } else if (name == "zeta1_sq") {
        v.exact = theory::zeta1_sq(need_m(m, name));
    } else if (name == "descent_mean") {
        v.exact = theory::descent_moments(need_n(n, name), m.value_or(1)).first;
    } else if (name == "descent_var_formula") {
        v.exact = theory::descent_moments(need_n(n, name), need_m(m, name)).second;
    } else if (name == "limit_var_descents_claimed") {
        v.exact = theory::limit_var_descents_claimed(need_m(m, name));
    } else if (name == "limit_var_descents_coupling") {
        v.exact = theory::limit_var_descents_coupling();
    } else if (name == "unimodal_variance_claimed") {
        v.exact = theory::unimodal_inversion_variance_claimed(need_n(n, name));
    } else if (name == "even_pile_probability") {
        v.exact = theory::even_pile_probability(make_spec(1, need_m(m, name), bias_path));
    } else if (name == "h1_mean") {
        v.exact = theory::h1_mean(need_m(m, name));
    } else if (name == "h1_second_moment") {
        v.exact = theory::h1_second_moment(need_m(m, name));
    } else if (name == "h1_abs_third_moment") {
        v.exact = theory::h1_abs_third_moment(need_m(m, name));
    } else if (name == "h1_third_moment_cap") {
        v.approx = theory::h1_third_moment_cap();
    } else if (name == "kd_bound_constant") {
        v.approx = theory::kd_bound_constant();
    } else if (name == "kd_bound_threshold_n") {
        v.exact = Rational(BigInt(theory::kd_bound_trivial_n_threshold()));
    } else if (name == "chen_shao_inversions") {
        v.approx = theory::inversion_kd_bound(need_n(n, name), need_m(m, name), false);
    } else if (name == "chen_shao_inversions_exact") {
        v.approx = theory::inversion_kd_bound(need_n(n, name), need_m(m, name), true);
    } else if (name == "slutsky_error") {
        v.approx = theory::descent_slutsky_error(need_n(n, name), need_m(m, name));
    } else {
        throw std::invalid_argument("unknown formula '" + name + "'\n" + formula_list());
    }
    return v;
}

// ---- subcommand handlers ----

int cmd_sample(std::uint64_t n, std::uint32_t m, std::uint64_t count, std::uint64_t seed,
               const std::string& bias_path, const std::string& format,
               const std::string& out_path, std::ostream& out) {
    const ShuffleSpec spec = make_spec(n, m, bias_path);
    // Words come sequentially from substream(seed, 0): identical to chunk 0 of
    // an experiment whose chunk covers all samples.
    EngineSource source(substream_seed(seed, 0));
    std::ostringstream payload;
    json samples = json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
        RandomWord word = sample_word(spec, source);
        Permutation perm = word_to_permutation(word);
        if (format == "text") {
            for (std::size_t k = 0; k < word.letters.size(); ++k) {
                payload << (k ? " " : "") << word.letters[k];
            }
            payload << " -> ";
            for (std::size_t k = 0; k < perm.size(); ++k) {
                payload << (k ? " " : "") << perm[k];
            }
            payload << "\n";
        } else if (format == "csv") {
            payload << i << ",\"";
            for (std::size_t k = 0; k < word.letters.size(); ++k) {
                payload << (k ? " " : "") << word.letters[k];
            }
            payload << "\",\"";
            for (std::size_t k = 0; k < perm.size(); ++k) {
                payload << (k ? " " : "") << perm[k];
            }
            payload << "\"\n";
        } else {
            samples.push_back(
                json{{"word", word_to_json(word)}, {"permutation", permutation_to_json(perm)}});
        }
    }
    if (format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["n"] = n;
        doc["m"] = m;
        doc["seed"] = seed;
        doc["samples"] = std::move(samples);
        payload << doc.dump(2) << "\n";
    }
    write_payload(payload.str(), out_path, out);
    return kExitOk;
}

// Stdout payloads are pure in (flags, seed): wall time is the one
// nondeterministic measurement, so it goes to stderr as a diagnostic.
int cmd_simulate(const montecarlo::ExperimentConfig& config, const std::string& format,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto report = montecarlo::run_experiment(config);
    std::ostringstream payload;
    if (format == "text") {
        payload << "statistic: " << to_string(report.statistic) << "  n=" << report.n
                << " m=" << report.m << " samples=" << report.sample_count
                << " seed=" << report.seed << "\n";
        payload << "mean: " << format_double(report.summary.mean())
                << "  variance: " << format_double(report.summary.variance())
                << "  min: " << report.summary.min << "  max: " << report.summary.max << "\n";
        if (report.standardized_mean) {
            payload << "standardized mean: " << format_double(*report.standardized_mean)
                    << "  standardized variance: " << format_double(*report.standardized_variance)
                    << "\n";
        }
        if (report.empirical_kd) {
            payload << "empirical d_K: " << format_double(*report.empirical_kd) << "\n";
        }
        if (report.coupling_max_abs_dev) {
            payload << "max |d - B|: " << *report.coupling_max_abs_dev
                    << " (bound " << 4 * report.m - 1 << ")\n";
        }
    } else if (format == "csv") {
        histogram_to_csv(report.histogram, payload);
    } else {
        payload << report_to_json(report, false).dump(2) << "\n";
    }
    err << "wall time: " << format_double(report.wall_time_seconds) << " s\n";
    write_payload(payload.str(), out_path, out);
    return kExitOk;
}

int cmd_oracle(std::uint64_t n, std::uint32_t m, StatisticKind statistic,
               const oracle::EnumerationOptions& options, const std::string& bias_path,
               const std::string& format, const std::string& out_path, std::ostream& out) {
    const ShuffleSpec spec = make_spec(n, m, bias_path);
    const auto dist = oracle::enumerate_distribution(spec, statistic, options);
    std::ostringstream payload;
    if (format == "csv") {
        distribution_to_csv(dist, payload);
    } else {
        payload << distribution_to_json(dist).dump(2) << "\n";
    }
    write_payload(payload.str(), out_path, out);
    return kExitOk;
}

int cmd_audit(std::uint64_t n_max, std::uint32_t m_max, bool strict,
              const oracle::EnumerationOptions& options, const std::string& format,
              const std::string& out_path, std::ostream& out) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> grid;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        for (std::uint64_t n = 1; n <= n_max; ++n) grid.emplace_back(n, m);
    }
    const auto report = oracle::audit_formulas(grid, options);
    std::ostringstream payload;
    if (format == "json") {
        payload << audit_to_json(report, options.budget).dump(2) << "\n";
    } else {
        audit_to_text(report, payload);
    }
    write_payload(payload.str(), out_path, out);
    return strict && report.has_printed_finding() ? kExitStrictFinding : kExitOk;
}

int cmd_clt(const std::vector<std::uint64_t>& n_list, std::uint32_t m, StatisticKind statistic,
            std::uint64_t samples, std::uint64_t seed, std::uint64_t chunk_size, unsigned threads,
            const std::string& format, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    if (statistic != StatisticKind::inversions && statistic != StatisticKind::descents) {
        throw std::invalid_argument("clt supports the inversions and descents statistics");
    }
    json runs = json::array();
    std::ostringstream csv;
    csv << "n,empirical_kd,bound\n";
    for (std::uint64_t n : n_list) {
        montecarlo::ExperimentConfig config{ShuffleSpec(n, m), statistic, samples, seed,
                                            chunk_size, threads};
        const auto report = montecarlo::run_experiment(config);
        const double bound = statistic == StatisticKind::inversions
                                 ? theory::kd_bound_constant() / std::sqrt(static_cast<double>(n))
                                 : theory::descent_slutsky_error(n, m);
        runs.push_back(report_to_json(report, false));
        err << "n=" << n << " wall time: " << format_double(report.wall_time_seconds) << " s\n";
        csv << n << "," << format_double(report.empirical_kd.value_or(-1.0)) << ","
            << format_double(bound) << "\n";
    }
    std::ostringstream payload;
    if (format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["statistic"] = to_string(statistic);
        doc["m"] = m;
        doc["samples"] = samples;
        doc["seed"] = seed;
        doc["runs"] = std::move(runs);
        payload << doc.dump(2) << "\n";
    } else {
        payload << csv.str();
    }
    write_payload(payload.str(), out_path, out);
    return kExitOk;
}

int cmd_formulas(const std::string& name, std::optional<std::uint64_t> n,
                 std::optional<std::uint32_t> m, const std::string& bias_path,
                 const std::string& format, const std::string& out_path, std::ostream& out) {
    const FormulaValue v = evaluate_formula(name, n, m, bias_path);
    std::ostringstream payload;
    if (format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["name"] = name;
        doc["n"] = n ? json(*n) : json(nullptr);
        doc["m"] = m ? json(*m) : json(nullptr);
        doc["exact"] = v.exact ? json(v.exact->to_string()) : json(nullptr);
        doc["decimal"] = v.exact ? json(v.exact->to_decimal_string()) : json(*v.approx);
        payload << doc.dump(2) << "\n";
    } else {
        if (v.exact) {
            payload << v.exact->to_string() << "\n= " << v.exact->to_decimal_string() << "\n";
        } else {
            payload << format_double(*v.approx) << "\n";
        }
    }
    write_payload(payload.str(), out_path, out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"shelf-shuffle simulation and verification laboratory"};
    app.name("shelflab");
    app.require_subcommand(1);

    std::uint64_t budget;
    try {
        budget = default_budget();
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    // sample
    auto* sample = app.add_subcommand("sample", "draw words and their permutations");
    std::uint64_t sample_n = 0;
    std::uint32_t sample_m = 0;
    std::uint64_t sample_count = 1;
    std::uint64_t sample_seed = 0;
    std::string sample_bias, sample_format = "text", sample_out;
    sample->add_option("--n", sample_n, "deck size")->required();
    sample->add_option("--m", sample_m, "shelf count")->required();
    sample->add_option("--samples", sample_count, "number of words to draw");
    sample->add_option("--seed", sample_seed, "random seed");
    sample->add_option("--bias", sample_bias, "bias file (JSON array of p/q strings)");
    sample->add_option("--format", sample_format)->check(CLI::IsMember({"text", "json", "csv"}));
    sample->add_option("--out", sample_out, "write output to file");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one Monte Carlo experiment");
    std::uint64_t sim_n = 0;
    std::uint32_t sim_m = 0;
    std::uint64_t sim_samples = 100'000;
    std::uint64_t sim_seed = 0;
    std::uint64_t sim_chunk = 8192;
    unsigned sim_threads = 0;
    std::string sim_stat = "inversions", sim_bias, sim_format = "json", sim_out;
    simulate->add_option("--n", sim_n, "deck size")->required();
    simulate->add_option("--m", sim_m, "shelf count")->required();
    simulate->add_option("--statistic", sim_stat)
        ->check(CLI::IsMember({"inversions", "descents", "pair_sum", "even_cards"}));
    simulate->add_option("--samples", sim_samples, "sample count");
    simulate->add_option("--seed", sim_seed, "random seed");
    simulate->add_option("--chunk-size", sim_chunk, "samples per substream chunk");
    simulate->add_option("--threads", sim_threads, "worker count hint (0 = auto)");
    simulate->add_option("--bias", sim_bias, "bias file");
    simulate->add_option("--format", sim_format)->check(CLI::IsMember({"json", "text", "csv"}));
    simulate->add_option("--out", sim_out, "write output to file");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustively enumerate a statistic");
    std::uint64_t ora_n = 0;
    std::uint32_t ora_m = 0;
    std::uint64_t ora_budget = budget;
    unsigned ora_threads = 1;
    std::string ora_stat = "inversions", ora_bias, ora_format = "json", ora_out;
    oracle_cmd->add_option("--n", ora_n, "deck size")->required();
    oracle_cmd->add_option("--m", ora_m, "shelf count")->required();
    oracle_cmd->add_option("--statistic", ora_stat)
        ->check(CLI::IsMember({"inversions", "descents", "pair_sum", "even_cards"}));
    oracle_cmd->add_option("--budget", ora_budget, "maximum number of words to enumerate");
    oracle_cmd->add_option("--threads", ora_threads, "enumeration worker count");
    oracle_cmd->add_option("--bias", ora_bias, "bias file");
    oracle_cmd->add_option("--format", ora_format)->check(CLI::IsMember({"json", "csv"}));
    oracle_cmd->add_option("--out", ora_out, "write output to file");

    // audit
    auto* audit = app.add_subcommand("audit", "compare closed forms against the oracle");
    std::uint64_t audit_n = 7;
    std::uint32_t audit_m = 3;
    std::uint64_t audit_budget = budget;
    unsigned audit_threads = 1;
    bool audit_strict = false;
    std::string audit_format = "text", audit_out;
    audit->add_option("--n", audit_n, "largest deck size in the grid");
    audit->add_option("--m", audit_m, "largest shelf count in the grid");
    audit->add_option("--budget", audit_budget, "per-point enumeration budget");
    audit->add_option("--threads", audit_threads, "enumeration worker count");
    audit->add_flag("--strict", audit_strict,
                    "exit nonzero when a printed formula disagrees with the oracle");
    audit->add_option("--format", audit_format)->check(CLI::IsMember({"text", "json"}));
    audit->add_option("--out", audit_out, "write output to file");

    // clt
    auto* clt = app.add_subcommand("clt", "Kolmogorov distance to the normal across deck sizes");
    std::vector<std::uint64_t> clt_n;
    std::uint32_t clt_m = 0;
    std::uint64_t clt_samples = 1'000'000;
    std::uint64_t clt_seed = 0;
    std::uint64_t clt_chunk = 8192;
    unsigned clt_threads = 0;
    std::string clt_stat = "inversions", clt_format = "csv", clt_out;
    clt->add_option("--n", clt_n, "deck sizes (repeatable)")->required()->expected(-1);
    clt->add_option("--m", clt_m, "shelf count")->required();
    clt->add_option("--statistic", clt_stat)->check(CLI::IsMember({"inversions", "descents"}));
    clt->add_option("--samples", clt_samples, "samples per deck size");
    clt->add_option("--seed", clt_seed, "random seed");
    clt->add_option("--chunk-size", clt_chunk, "samples per substream chunk");
    clt->add_option("--threads", clt_threads, "worker count hint (0 = auto)");
    clt->add_option("--format", clt_format)->check(CLI::IsMember({"csv", "json"}));
    clt->add_option("--out", clt_out, "write output to file");

    // formulas
    auto* formulas = app.add_subcommand("formulas", "print a closed-form value exactly");
    std::string formula_name;
    std::uint64_t formula_n = 0;
    std::uint32_t formula_m = 0;
    std::string formula_bias, formula_format = "text", formula_out;
    formulas->add_option("name", formula_name, "formula name")->required();
    auto* opt_n = formulas->add_option("--n", formula_n, "deck size");
    auto* opt_m = formulas->add_option("--m", formula_m, "shelf count");
    formulas->add_option("--bias", formula_bias, "bias file");
    formulas->add_option("--format", formula_format)->check(CLI::IsMember({"text", "json"}));
    formulas->add_option("--out", formula_out, "write output to file");

    std::vector<const char*> argv;
    argv.push_back("shelflab");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(sample)) {
            return cmd_sample(sample_n, sample_m, sample_count, sample_seed, sample_bias,
                              sample_format, sample_out, out);
        }
        if (app.got_subcommand(simulate)) {
            montecarlo::ExperimentConfig config{make_spec(sim_n, sim_m, sim_bias),
                                                statistic_from_string(sim_stat), sim_samples,
                                                sim_seed, sim_chunk, sim_threads};
            return cmd_simulate(config, sim_format, sim_out, out, err);
        }
        if (app.got_subcommand(oracle_cmd)) {
            return cmd_oracle(ora_n, ora_m, statistic_from_string(ora_stat),
                              {ora_budget, ora_threads}, ora_bias, ora_format, ora_out, out);
        }
        if (app.got_subcommand(audit)) {
            return cmd_audit(audit_n, audit_m, audit_strict, {audit_budget, audit_threads},
                             audit_format, audit_out, out);
        }
        if (app.got_subcommand(clt)) {
            return cmd_clt(clt_n, clt_m, statistic_from_string(clt_stat), clt_samples, clt_seed,
                           clt_chunk, clt_threads, clt_format, clt_out, out, err);
        }
        if (app.got_subcommand(formulas)) {
            std::optional<std::uint64_t> n_opt;
            std::optional<std::uint32_t> m_opt;
            if (opt_n->count()) n_opt = formula_n;
            if (opt_m->count()) m_opt = formula_m;
            return cmd_formulas(formula_name, n_opt, m_opt, formula_bias, formula_format,
                                formula_out, out);
        }
    } catch (const oracle::BudgetExceeded& e) {
        err << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

}  // namespace shelflab::cli
