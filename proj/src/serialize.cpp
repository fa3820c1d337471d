#include "shelflab/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace shelflab {

json word_to_json(const RandomWord& word) {
    json arr = json::array();
    for (std::uint32_t x : word.letters) arr.push_back(x);
    return arr;
}

json permutation_to_json(const Permutation& p) {
    json arr = json::array();
    for (std::uint32_t label : p.one_line()) arr.push_back(label);
    return arr;
}

std::vector<std::uint32_t> int_array_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of integers");
    std::vector<std::uint32_t> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_unsigned()) {
            throw std::invalid_argument("expected nonnegative integers in array");
        }
        out.push_back(v.get<std::uint32_t>());
    }
    return out;
}

json distribution_to_json(const oracle::ExactDistribution& dist) {
    json counts = json::object();
    for (const auto& [value, count] : dist.counts) {
        counts[std::to_string(value)] = count.to_string();
    }
    auto [mean, variance] = oracle::exact_moments(dist);
    json out;
    out["schema_version"] = kSchemaVersion;
    out["n"] = dist.n;
    out["m"] = dist.m;
    out["statistic"] = to_string(dist.statistic);
    out["biased"] = dist.biased;
    out["counts"] = std::move(counts);
    out["total"] = dist.total.to_string();
    out["mean"] = mean.to_string();
    out["variance"] = variance.to_string();
    return out;
}

namespace {

json bias_to_json(const std::optional<std::vector<Rational>>& bias) {
    if (!bias) return nullptr;
    json arr = json::array();
    for (const auto& p : *bias) arr.push_back(p.to_string());
    return arr;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json report_to_json(const montecarlo::ExperimentReport& report, bool include_timing) {
    json config;
    config["n"] = report.n;
    config["m"] = report.m;
    config["statistic"] = to_string(report.statistic);
    config["samples"] = report.sample_count;
    config["seed"] = report.seed;
    config["chunk_size"] = report.chunk_size;
    config["bias"] = bias_to_json(report.bias);

    json results;
    results["count"] = report.summary.count;
    results["sum"] = montecarlo::to_decimal_string(report.summary.sum);
    results["sum_sq"] = montecarlo::to_decimal_string(report.summary.sum_sq);
    results["min"] = report.summary.min;
    results["max"] = report.summary.max;
    results["mean"] = report.summary.mean();
    results["variance"] = report.summary.variance();
    results["standardized_mean"] = opt(report.standardized_mean);
    results["standardized_variance"] = opt(report.standardized_variance);
    results["empirical_kd"] = opt(report.empirical_kd);
    results["coupling_max_abs_dev"] =
        report.coupling_max_abs_dev ? json(*report.coupling_max_abs_dev) : json(nullptr);

    json bounds;
    bounds["kd_envelope"] = opt(report.kd_envelope);
    bounds["chen_shao_bound"] = opt(report.chen_shao_bound);
    bounds["slutsky_error"] = opt(report.slutsky_error);
    bounds["claimed_limit_var"] = opt(report.claimed_limit_var);
    bounds["residual_vs_coupling_limit"] = opt(report.residual_vs_coupling_limit);
    bounds["residual_vs_claimed_limit"] = opt(report.residual_vs_claimed_limit);
    results["bounds"] = std::move(bounds);

    json histogram = json::object();
    for (const auto& [value, count] : report.histogram) {
        histogram[std::to_string(value)] = count;
    }
    results["histogram"] = std::move(histogram);

    json out;
    out["schema_version"] = kSchemaVersion;
    out["config"] = std::move(config);
    out["results"] = std::move(results);
    if (include_timing) {
        out["timing"] = json{{"wall_time_seconds", report.wall_time_seconds}};
    }
    return out;
}

json audit_to_json(const oracle::AuditReport& report, std::uint64_t budget) {
    json points = json::array();
    for (const auto& p : report.points) {
        json comparisons = json::array();
        for (const auto& c : p.comparisons) {
            comparisons.push_back(json{{"quantity", c.quantity},
                                       {"claim", c.claim},
                                       {"printed_formula", c.printed_formula},
                                       {"claimed", c.claimed.to_string()},
                                       {"oracle", c.oracle.to_string()},
                                       {"difference", c.difference.to_string()},
                                       {"match", c.match}});
        }
        json oracle_block;
        oracle_block["inversion_mean"] = p.oracle.mean_I.to_string();
        oracle_block["inversion_var"] = p.oracle.var_I.to_string();
        oracle_block["var_A"] = p.oracle.var_A.to_string();
        oracle_block["var_C"] = p.oracle.var_C.to_string();
        oracle_block["cov_AC"] = p.oracle.cov_AC.to_string();
        oracle_block["descent_mean"] = p.oracle.mean_d.to_string();
        oracle_block["descent_var"] = p.oracle.var_d.to_string();
        oracle_block["coupling_max_abs_dev"] = p.oracle.coupling_max_abs_dev;
        points.push_back(json{{"n", p.n},
                              {"m", p.m},
                              {"states", p.states.to_string()},
                              {"oracle", std::move(oracle_block)},
                              {"comparisons", std::move(comparisons)}});
    }
    json out;
    out["schema_version"] = kSchemaVersion;
    out["budget"] = budget;
    out["points"] = std::move(points);
    out["skipped"] = report.skipped;
    out["findings"] = report.finding_count();
    out["printed_formula_findings"] = report.has_printed_finding();
    return out;
}

void audit_to_text(const oracle::AuditReport& report, std::ostream& os) {
    for (const auto& p : report.points) {
        os << "n=" << p.n << " m=" << p.m << " (" << p.states.to_string() << " words, max|d-B|="
           << p.oracle.coupling_max_abs_dev << ")\n";
        for (const auto& c : p.comparisons) {
            os << "  " << std::left << std::setw(20) << c.quantity << " vs " << std::setw(26)
               << c.claim << " claimed=" << c.claimed.to_string()
               << " oracle=" << c.oracle.to_string();
            if (c.match) {
                os << "  MATCH\n";
            } else {
                os << " diff=" << c.difference.to_string() << "  FINDING\n";
            }
        }
    }
    for (const auto& s : report.skipped) {
        os << "skipped: " << s << "\n";
    }
    os << "findings: " << report.finding_count() << "\n";
}

void histogram_to_csv(const std::map<std::int64_t, std::uint64_t>& histogram, std::ostream& os) {
    os << "value,count\n";
    for (const auto& [value, count] : histogram) {
        os << value << "," << count << "\n";
    }
}

void distribution_to_csv(const oracle::ExactDistribution& dist, std::ostream& os) {
    os << "value,count\n";
    for (const auto& [value, count] : dist.counts) {
        os << value << "," << count.to_string() << "\n";
    }
}

std::vector<Rational> parse_bias_json(const json& j, std::uint32_t m) {
    if (!j.is_array()) {
        throw std::invalid_argument("bias file must be a JSON array of \"p/q\" strings");
    }
    if (j.size() != 2 * static_cast<std::size_t>(m)) {
        throw std::invalid_argument("bias file has " + std::to_string(j.size()) +
                                    " entries, expected " + std::to_string(2 * m));
    }
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        if (!e.is_string()) {
            throw std::invalid_argument(
                "bias entry " + std::to_string(i + 1) + " (" + e.dump() +
                ") is not a string; probabilities must be exact rationals like \"1/4\"");
        }
        try {
            out.push_back(Rational::from_string(e.get<std::string>()));
        } catch (const std::exception& ex) {
            throw std::invalid_argument("bias entry " + std::to_string(i + 1) + " (\"" +
                                        e.get<std::string>() + "\"): " + ex.what());
        }
        if (out.back().is_negative()) {
            throw std::invalid_argument("bias entry " + std::to_string(i + 1) + " (\"" +
                                        e.get<std::string>() + "\") is negative");
        }
    }
    return out;
}

std::vector<Rational> load_bias_file(const std::string& path, std::uint32_t m) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open bias file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw std::invalid_argument("bias file " + path + " is not valid JSON: " + ex.what());
    }
    return parse_bias_json(j, m);
}

}  // namespace shelflab
