#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kronlab/closed_form.hpp"
#include "kronlab/greedy_triple.hpp"
#include "kronlab/oracle.hpp"
#include "kronlab/rational.hpp"

namespace kronlab {

enum class Verification { oracle_exact, witness_sandwich, unverified_small_n };

struct SweepRow {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t R = 0;
  std::int64_t S = 0;
  Rational alpha;
  Rational beta;
  Rational ln;
  bool gap = false;  // beta < alpha
  Verification verified = Verification::unverified_small_n;
  std::int64_t runtime_ms = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Outcome of each independent check run against a triple. Unset optionals
// mean the check was not run.
struct TripleChecks {
  bool regime = false;  // in_asymptotic_regime(a, b, n)
  bool binary_agrees = false;
  std::optional<bool> tables_agree;
  std::optional<bool> witness_agrees;
  std::optional<bool> greedy_bounded;
};

// A row is only reported as verified when the triple is in the asymptotic
// regime, every check that ran passed, and the checks needed for its case ran
// at all: the binary oracle for R != a, and the witness plus greedy upper
// bounds for R = a.
Verification classify(const TripleChecks& checks, bool r_is_a);

// A failed check on a triple for which the formulas claim validity.
bool is_mismatch(const TripleChecks& checks);

struct VerifyOptions {
  std::size_t greedy_samples = 32;
  std::int64_t max_denominator = 60;
  std::uint64_t seed = 0x6b726f6e6c6162ULL;
  bool check_tables = false;
};

// Deterministic pseudo-random targets t_j = p/q with 1 <= q <= max_denominator
// and 0 <= p < q. The stream depends only on (a, b, n, seed).
std::vector<std::array<Rational, 3>> sample_targets(std::int64_t a, std::int64_t b,
                                                    std::int64_t n, std::size_t count,
                                                    std::int64_t max_denominator,
                                                    std::uint64_t seed);

TripleChecks check_triple(std::int64_t a, std::int64_t b, std::int64_t n,
                          const VerifyOptions& options);

struct RowResult {
  SweepRow row;
  TripleChecks checks;
};

RowResult compute_row(std::int64_t a, std::int64_t b, std::int64_t n, const VerifyOptions& options);

// Rows for n in [n_from, n_to], in increasing n regardless of `jobs`.
std::vector<RowResult> run_sweep(std::int64_t a, std::int64_t b, std::int64_t n_from,
                                 std::int64_t n_to, const VerifyOptions& options, unsigned jobs);

const char* to_string(Verification v);
Verification parse_verification(std::string_view text);

// {"num": "...", "den": "...", "approx": "..."}
nlohmann::json rational_to_json(const Rational& r, int precision = 12);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json row_to_json(const SweepRow& row, int precision = 12);
SweepRow row_from_json(const nlohmann::json& j);

// Columns a,b,n,r,R,S,alpha,beta,ln,gap,verified; rationals as p/q; LF endings.
std::string csv_header();
std::string row_to_csv(const SweepRow& row);
SweepRow row_from_csv(std::string_view line);
void write_csv(std::ostream& os, std::span<const SweepRow> rows);
std::vector<SweepRow> read_csv(std::istream& is);

nlohmann::json oracle_to_json(const SpectrumProblem& p, const OracleResult& result, int precision);
nlohmann::json certificate_to_json(const Certificate& c, GreedyStatus status, int precision);
nlohmann::json congruence_to_json(const CongruenceData& c);

// Writes to a sibling temporary file and renames it over `path`. On failure
// the temporary is removed and IoError is thrown.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace kronlab
