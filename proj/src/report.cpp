#include "kronlab/report.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "kronlab/errors.hpp"
#include "kronlab/exact_arith.hpp"
#include "kronlab/parallel.hpp"

namespace kronlab {
namespace {

std::int64_t parse_int64(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("malformed integer field: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

nlohmann::json integers_to_json(std::span<const Integer> values) {
  nlohmann::json out = nlohmann::json::array();
  for (const Integer& v : values) out.push_back(v.str());
  return out;
}

}  // namespace

Verification classify(const TripleChecks& checks, bool r_is_a) {
  const auto failed = [](const std::optional<bool>& c) { return c.has_value() && !*c; };
  if (!checks.binary_agrees || failed(checks.tables_agree) || failed(checks.witness_agrees) ||
      failed(checks.greedy_bounded) || !checks.regime) {
    return Verification::unverified_small_n;
  }
  if (!r_is_a) return Verification::oracle_exact;
  if (checks.witness_agrees.value_or(false) && checks.greedy_bounded.value_or(false)) {
    return Verification::witness_sandwich;
  }
  return Verification::unverified_small_n;
}

bool is_mismatch(const TripleChecks& checks) {
  const auto failed = [](const std::optional<bool>& c) { return c.has_value() && !*c; };
  return checks.regime && (!checks.binary_agrees || failed(checks.tables_agree) ||
                           failed(checks.witness_agrees) || failed(checks.greedy_bounded));
}

std::vector<std::array<Rational, 3>> sample_targets(std::int64_t a, std::int64_t b,
                                                    std::int64_t n, std::size_t count,
                                                    std::int64_t max_denominator,
                                                    std::uint64_t seed) {
  if (max_denominator < 1) throw InvalidInput("max_denominator must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32)};
  std::mt19937_64 rng(seq);
  const auto draw = [&] {
    const auto q = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_denominator)) + 1;
    const auto p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    return Rational(p, q);
  };
  std::vector<std::array<Rational, 3>> out(count);
  for (auto& t : out) {
    t[0] = draw();
    t[1] = draw();
    t[2] = draw();
  }
  return out;
}

TripleChecks check_triple(std::int64_t a, std::int64_t b, std::int64_t n,
                          const VerifyOptions& options) {
  const CongruenceData c = congruence_data(a, b, n);
  const FormulaValue alpha = alpha_formula(a, b, n);
  const std::vector<std::int64_t> spectrum{a, b, n};

  TripleChecks checks;
  checks.regime = alpha.regime_ok;
  checks.binary_agrees = beta_exact(spectrum).value == beta_formula(a, b, n).value;

  if (options.check_tables) {
    const auto pair = canonical_binary_pair(a, b);
    bool agree = true;
    for (const Rational& t3 : {Rational(0), Rational(1, 2)}) {
      const Rational oracle = mu_exact(SpectrumProblem(spectrum, {pair[0], pair[1], t3})).value;
      agree = agree && oracle == binary_mu(a, b, n, t3).value;
    }
    checks.tables_agree = agree;
  }

  if (c.R == a) {
    const AlphaWitness w = alpha_witness(a, b, n);
    const std::vector<Rational> targets(w.targets.begin(), w.targets.end());
    checks.witness_agrees = mu_exact(SpectrumProblem(spectrum, targets)).value == w.expected_mu;
  }

  if (options.greedy_samples > 0) {
    bool bounded = true;
    for (const auto& t : sample_targets(a, b, n, options.greedy_samples, options.max_denominator,
                                        options.seed)) {
      const GreedyOutcome g = greedy_en_certificate(TripleProblem(a, b, n, t[0], t[1], t[2]));
      if (alpha.value < g.certificate.cost) {
        bounded = false;
        break;
      }
    }
    checks.greedy_bounded = bounded;
  }
  return checks;
}

RowResult compute_row(std::int64_t a, std::int64_t b, std::int64_t n,
                      const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const CongruenceData c = congruence_data(a, b, n);

  RowResult out;
  SweepRow& row = out.row;
  row.a = a;
  row.b = b;
  row.n = n;
  row.r = c.r;
  row.R = c.R;
  row.S = c.S;
  row.alpha = alpha_formula(a, b, n).value;
  row.beta = beta_formula(a, b, n).value;
  row.ln = ln_value(a, b, n);
  row.gap = row.beta < row.alpha;
  out.checks = check_triple(a, b, n, options);
  row.verified = classify(out.checks, c.R == a);
  row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out;
}

std::vector<RowResult> run_sweep(std::int64_t a, std::int64_t b, std::int64_t n_from,
                                 std::int64_t n_to, const VerifyOptions& options, unsigned jobs) {
  if (n_from > n_to) throw InvalidInput("sweep needs from <= to");
  validate_triple(a, b, n_from);
  const auto count = static_cast<std::size_t>(n_to - n_from + 1);
  std::vector<RowResult> rows(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    rows[i] = compute_row(a, b, n_from + static_cast<std::int64_t>(i), options);
  });
  return rows;
}

const char* to_string(Verification v) {
  switch (v) {
    case Verification::oracle_exact:
      return "oracle-exact";
    case Verification::witness_sandwich:
      return "witness-sandwich";
    case Verification::unverified_small_n:
      return "unverified-small-n";
  }
  return "unknown";
}

Verification parse_verification(std::string_view text) {
  for (auto v : {Verification::oracle_exact, Verification::witness_sandwich,
                 Verification::unverified_small_n}) {
    if (text == to_string(v)) return v;
  }
  throw InvalidInput("unknown verification tag: '" + std::string(text) + "'");
}

nlohmann::json rational_to_json(const Rational& r, int precision) {
  return {{"num", r.num().str()}, {"den", r.den().str()}, {"approx", r.decimal(precision)}};
}

Rational rational_from_json(const nlohmann::json& j) {
  try {
    return Rational(parse_integer(j.at("num").get<std::string>()),
                    parse_integer(j.at("den").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed rational object: ") + e.what());
  }
}

nlohmann::json row_to_json(const SweepRow& row, int precision) {
  return {{"a", row.a},
          {"b", row.b},
          {"n", row.n},
          {"r", row.r},
          {"R", row.R},
          {"S", row.S},
          {"alpha", rational_to_json(row.alpha, precision)},
          {"beta", rational_to_json(row.beta, precision)},
          {"ln", rational_to_json(row.ln, precision)},
          {"gap", row.gap},
          {"verified", to_string(row.verified)},
          {"runtime_ms", row.runtime_ms}};
}

SweepRow row_from_json(const nlohmann::json& j) {
  try {
    SweepRow row;
    row.a = j.at("a").get<std::int64_t>();
    row.b = j.at("b").get<std::int64_t>();
    row.n = j.at("n").get<std::int64_t>();
    row.r = j.at("r").get<std::int64_t>();
    row.R = j.at("R").get<std::int64_t>();
    row.S = j.at("S").get<std::int64_t>();
    row.alpha = rational_from_json(j.at("alpha"));
    row.beta = rational_from_json(j.at("beta"));
    row.ln = rational_from_json(j.at("ln"));
    row.gap = j.at("gap").get<bool>();
    row.verified = parse_verification(j.at("verified").get<std::string>());
    row.runtime_ms = j.value("runtime_ms", std::int64_t{0});
    return row;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed sweep row: ") + e.what());
  }
}

std::string csv_header() { return "a,b,n,r,R,S,alpha,beta,ln,gap,verified"; }

std::string row_to_csv(const SweepRow& row) {
  std::ostringstream os;
  os << row.a << ',' << row.b << ',' << row.n << ',' << row.r << ',' << row.R << ',' << row.S
     << ',' << row.alpha.fraction_str() << ',' << row.beta.fraction_str() << ','
     << row.ln.fraction_str() << ',' << (row.gap ? "true" : "false") << ','
     << to_string(row.verified);
  return os.str();
}

SweepRow row_from_csv(std::string_view line) {
  const auto fields = split(line, ',');
  if (fields.size() != 11) {
    throw InvalidInput("expected 11 CSV fields, got " + std::to_string(fields.size()));
  }
  SweepRow row;
  row.a = parse_int64(fields[0]);
  row.b = parse_int64(fields[1]);
  row.n = parse_int64(fields[2]);
  row.r = parse_int64(fields[3]);
  row.R = parse_int64(fields[4]);
  row.S = parse_int64(fields[5]);
  row.alpha = Rational::parse(fields[6]);
  row.beta = Rational::parse(fields[7]);
  row.ln = Rational::parse(fields[8]);
  if (fields[9] == "true") {
    row.gap = true;
  } else if (fields[9] == "false") {
    row.gap = false;
  } else {
    throw InvalidInput("malformed gap field: '" + std::string(fields[9]) + "'");
  }
  row.verified = parse_verification(fields[10]);
  return row;
}

void write_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << csv_header() << '\n';
  for (const SweepRow& row : rows) os << row_to_csv(row) << '\n';
}

std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header()) {
    throw InvalidInput("missing or unexpected CSV header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    rows.push_back(row_from_csv(line));
  }
  return rows;
}

nlohmann::json oracle_to_json(const SpectrumProblem& p, const OracleResult& result,
                              int precision) {
  nlohmann::json targets = nlohmann::json::array();
  for (const Rational& t : p.targets()) targets.push_back(rational_to_json(t, precision));
  return {{"spectrum", p.spectrum()},
          {"targets", targets},
          {"value", rational_to_json(result.value, precision)},
          {"x_star", rational_to_json(result.x_star, precision)},
          {"k_star", integers_to_json(result.k_star)},
          {"candidates_examined", result.candidates_examined}};
}

nlohmann::json certificate_to_json(const Certificate& c, GreedyStatus status, int precision) {
  return {{"x_star", rational_to_json(c.x_star, precision)},
          {"k", integers_to_json(c.k)},
          {"cost", rational_to_json(c.cost, precision)},
          {"method", to_string(c.method)},
          {"negated", c.negated},
          {"status", status == GreedyStatus::certified ? "certified" : "not-in-asymptotic-regime"}};
}

nlohmann::json congruence_to_json(const CongruenceData& c) {
  return {{"r", c.r}, {"T", c.T}, {"R", c.R}, {"r2", c.r2}, {"S", c.S},
          {"g", c.g}, {"h", c.h}, {"parity_case", to_string(c.parity_case)}};
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move report into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace kronlab
