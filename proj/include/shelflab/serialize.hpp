#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "shelflab/montecarlo.hpp"
#include "shelflab/oracle.hpp"

namespace shelflab {

// Insertion-ordered JSON keeps every schema's field order stable, so equal
// results serialize to equal bytes.
using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Words and permutations serialize as plain arrays of 1-based integers.
json word_to_json(const RandomWord& word);
json permutation_to_json(const Permutation& p);

std::vector<std::uint32_t> int_array_from_json(const json& j);

json distribution_to_json(const oracle::ExactDistribution& dist);

// Timing is measurement metadata and is the one nondeterministic field; the
// canonical form (include_timing = false) is byte-identical across worker
// counts for a fixed seed and chunk size.
json report_to_json(const montecarlo::ExperimentReport& report, bool include_timing = true);

json audit_to_json(const oracle::AuditReport& report, std::uint64_t budget);
void audit_to_text(const oracle::AuditReport& report, std::ostream& os);

// "value,count" rows sorted by value, with a header line.
void histogram_to_csv(const std::map<std::int64_t, std::uint64_t>& histogram, std::ostream& os);
void distribution_to_csv(const oracle::ExactDistribution& dist, std::ostream& os);

// Bias files are JSON arrays of exactly 2m "p/q" strings. Anything else —
// wrong length, non-string entries (floats included), malformed rationals,
// negative entries, wrong sum — is rejected with a diagnostic naming the
// offending entry.
std::vector<Rational> parse_bias_json(const json& j, std::uint32_t m);
std::vector<Rational> load_bias_file(const std::string& path, std::uint32_t m);

}  // namespace shelflab
