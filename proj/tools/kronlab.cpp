// kronlab: exact Kronecker constants for small integer sets.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 verification mismatch,
// 3 internal invariant breach.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kronlab/closed_form.hpp"
#include "kronlab/errors.hpp"
#include "kronlab/greedy_triple.hpp"
#include "kronlab/oracle.hpp"
#include "kronlab/rational.hpp"
#include "kronlab/report.hpp"

namespace {

using kronlab::Rational;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitInternal = 3;

enum class Format { text, json, csv };

struct Output {
  bool json = false;
  bool csv = false;
  std::string out;
  int precision = 12;

  Format format() const {
    if (json) return Format::json;
    if (csv) return Format::csv;
    if (!out.empty()) {
      const auto ext = std::filesystem::path(out).extension();
      if (ext == ".json") return Format::json;
      if (ext == ".csv") return Format::csv;
    }
    return Format::text;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (out.empty()) throw kronlab::InvalidInput("empty list");
  return out;
}

std::vector<std::int64_t> parse_spectrum(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(text)) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw kronlab::InvalidInput("malformed frequency: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_targets(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(Rational::parse(item));
  return out;
}

std::string show(const Rational& r, int precision) {
  if (r.is_integer()) return r.str();
  return r.fraction_str() + " (" + r.decimal(precision) + ")";
}

template <class Range>
std::string join(const Range& values) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : values) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os.str();
}

std::string tuple(const std::vector<Rational>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(v.str());
  return "(" + join(parts) + ")";
}

void emit(const Output& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
  } else {
    kronlab::write_file_atomically(o.out, content);
  }
}

const char* yes_no(bool v) { return v ? "true" : "false"; }

std::string check_str(const std::optional<bool>& c) {
  if (!c) return "not run";
  return *c ? "pass" : "FAIL";
}

json checks_to_json(const kronlab::TripleChecks& c) {
  json j = {{"regime", c.regime}, {"binary_agrees", c.binary_agrees}};
  const auto put = [&](const char* key, const std::optional<bool>& v) {
    j[key] = v ? json(*v) : json(nullptr);
  };
  put("tables_agree", c.tables_agree);
  put("witness_agrees", c.witness_agrees);
  put("greedy_bounded", c.greedy_bounded);
  return j;
}

kronlab::VerifyOptions verify_options(bool verify) {
  kronlab::VerifyOptions opts;
  if (verify) {
    opts.greedy_samples = 500;
    opts.check_tables = true;
  }
  return opts;
}

// ---------------------------------------------------------------- mu

struct MuArgs {
  std::string set;
  std::string t;
  bool greedy = false;
};

int cmd_mu(const MuArgs& args, const Output& o) {
  kronlab::SpectrumProblem p(parse_spectrum(args.set), parse_targets(args.t));
  const auto result = kronlab::mu_exact(p);

  std::optional<kronlab::GreedyOutcome> greedy;
  if (args.greedy) {
    if (p.size() != 3) throw kronlab::InvalidInput("--greedy needs exactly three frequencies");
    const auto& s = p.spectrum();
    const auto& t = p.targets();
    greedy = kronlab::greedy_en_certificate(kronlab::TripleProblem(s[0], s[1], s[2], t[0], t[1], t[2]));
    if (greedy->certificate.cost < result.value) {
      throw kronlab::InvariantBreach("greedy certificate cost " + greedy->certificate.cost.str() +
                                     " is below the oracle value " + result.value.str());
    }
  }

  std::ostringstream os;
  switch (o.format()) {
    case Format::json: {
      json j = kronlab::oracle_to_json(p, result, o.precision);
      if (greedy) j["certificate"] = kronlab::certificate_to_json(greedy->certificate, greedy->status, o.precision);
      os << j.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      // k_star entries are separated by ';' since ',' separates columns.
      std::string k_field;
      for (std::size_t i = 0; i < result.k_star.size(); ++i) {
        k_field += (i ? ";" : "") + result.k_star[i].str();
      }
      os << "value,x_star,k_star,candidates_examined";
      if (greedy) os << ",certificate_cost,certificate_x,certificate_method";
      os << '\n'
         << result.value.fraction_str() << ',' << result.x_star.fraction_str() << ',' << k_field
         << ',' << result.candidates_examined;
      if (greedy) {
        os << ',' << greedy->certificate.cost.fraction_str() << ','
           << greedy->certificate.x_star.fraction_str() << ','
           << kronlab::to_string(greedy->certificate.method);
      }
      os << '\n';
      break;
    }
    case Format::text: {
      std::vector<std::string> ks;
      for (const auto& k : result.k_star) ks.push_back(k.str());
      os << "spectrum    " << join(p.spectrum()) << '\n'
         << "targets     " << tuple(p.targets()) << '\n'
         << "value       " << show(result.value, o.precision) << '\n'
         << "x_star      " << show(result.x_star, o.precision) << '\n'
         << "k_star      " << join(ks) << '\n'
         << "candidates  " << result.candidates_examined << '\n';
      if (greedy) {
        const auto& c = greedy->certificate;
        std::vector<std::string> ck;
        for (const auto& k : c.k) ck.push_back(k.str());
        os << "greedy      " << show(c.cost, o.precision) << " at x = " << c.x_star.str()
           << ", k = " << join(ck) << ", method " << kronlab::to_string(c.method)
           << (c.negated ? ", negated" : "") << ", "
           << (greedy->status == kronlab::GreedyStatus::certified ? "certified"
                                                                   : "not-in-asymptotic-regime")
           << '\n';
      }
      break;
    }
  }
  emit(o, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- constants

struct TripleArgs {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t n = 0;
  bool verify = false;
  std::int64_t grid = 0;
};

int cmd_constants(const TripleArgs& args, const Output& o, unsigned jobs) {
  kronlab::validate_triple(args.a, args.b, args.n);
  const auto c = kronlab::congruence_data(args.a, args.b, args.n);
  const auto alpha = kronlab::alpha_formula(args.a, args.b, args.n);
  const auto beta = kronlab::beta_formula(args.a, args.b, args.n);
  const auto witness = kronlab::alpha_witness(args.a, args.b, args.n);
  const auto row = kronlab::compute_row(args.a, args.b, args.n, verify_options(args.verify));

  std::optional<kronlab::TargetOptimum> grid;
  if (args.grid > 0) {
    const std::vector<std::int64_t> s{args.a, args.b, args.n};
    grid = kronlab::alpha_grid_lower_bound(s, args.grid, jobs);
  }
  const bool grid_mismatch = grid && alpha.regime_ok && alpha.value < grid->value;
  const bool mismatch = kronlab::is_mismatch(row.checks) || grid_mismatch;

  std::ostringstream os;
  switch (o.format()) {
    case Format::json: {
      json j = kronlab::row_to_json(row.row, o.precision);
      j["congruence"] = kronlab::congruence_to_json(c);
      j["alpha_case"] = alpha.case_label;
      j["beta_case"] = beta.case_label;
      j["regime"] = alpha.regime_ok;
      json wt = json::array();
      for (const auto& t : witness.targets) wt.push_back(kronlab::rational_to_json(t, o.precision));
      j["witness"] = {{"targets", wt},
                      {"t3_raw", kronlab::rational_to_json(witness.t3_raw, o.precision)},
                      {"expected_mu", kronlab::rational_to_json(witness.expected_mu, o.precision)},
                      {"binary", witness.binary}};
      j["checks"] = checks_to_json(row.checks);
      if (grid) {
        json arg = json::array();
        for (const auto& t : grid->argmax) arg.push_back(kronlab::rational_to_json(t, o.precision));
        j["grid"] = {{"D", args.grid},
                     {"lower_bound", kronlab::rational_to_json(grid->value, o.precision)},
                     {"argmax", arg}};
      }
      os << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      os << kronlab::csv_header() << '\n' << kronlab::row_to_csv(row.row) << '\n';
      break;
    case Format::text: {
      os << "triple      " << args.a << ' ' << args.b << ' ' << args.n << '\n'
         << "congruence  r=" << c.r << " T=" << c.T << " R=" << c.R << " r2=" << c.r2
         << " S=" << c.S << " g=" << c.g << " h=" << c.h << " ("
         << kronlab::to_string(c.parity_case) << ")\n"
         << "alpha       " << show(alpha.value, o.precision) << "  [" << alpha.case_label << "]\n"
         << "beta        " << show(beta.value, o.precision) << "  [" << beta.case_label << "]\n"
         << "ln          " << show(row.row.ln, o.precision) << '\n'
         << "gap         " << yes_no(row.row.gap) << '\n'
         << "regime      " << yes_no(alpha.regime_ok) << '\n'
         << "witness     t = "
         << tuple({witness.targets.begin(), witness.targets.end()}) << ", mu = "
         << witness.expected_mu.str() << '\n'
         << "checks      binary " << (row.checks.binary_agrees ? "pass" : "FAIL") << ", tables "
         << check_str(row.checks.tables_agree) << ", witness "
         << check_str(row.checks.witness_agrees) << ", greedy "
         << check_str(row.checks.greedy_bounded) << '\n';
      if (grid) {
        os << "grid        D=" << args.grid << " lower bound " << show(grid->value, o.precision)
           << " at " << tuple(grid->argmax) << '\n';
      }
      os << "verified    " << kronlab::to_string(row.row.verified) << '\n';
      break;
    }
  }
  emit(o, os.str());
  if (mismatch) {
    std::cerr << "kronlab: formula disagrees with the oracle inside the asymptotic regime\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- witness

int cmd_witness(const TripleArgs& args, const Output& o) {
  kronlab::validate_triple(args.a, args.b, args.n);
  const auto w = kronlab::alpha_witness(args.a, args.b, args.n);
  const std::vector<Rational> targets(w.targets.begin(), w.targets.end());
  std::optional<kronlab::OracleResult> oracle;
  if (args.verify) {
    oracle = kronlab::mu_exact(kronlab::SpectrumProblem({args.a, args.b, args.n}, targets));
  }
  const bool mismatch = oracle && oracle->value != w.expected_mu &&
                        kronlab::in_asymptotic_regime(args.a, args.b, args.n);

  std::ostringstream os;
  switch (o.format()) {
    case Format::json: {
      json t = json::array();
      for (const auto& v : targets) t.push_back(kronlab::rational_to_json(v, o.precision));
      json j = {{"a", args.a},
                {"b", args.b},
                {"n", args.n},
                {"targets", t},
                {"t3_raw", kronlab::rational_to_json(w.t3_raw, o.precision)},
                {"expected_mu", kronlab::rational_to_json(w.expected_mu, o.precision)},
                {"binary", w.binary}};
      if (oracle) j["oracle_mu"] = kronlab::rational_to_json(oracle->value, o.precision);
      os << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      os << "a,b,n,t1,t2,t3,t3_raw,expected_mu,binary" << (oracle ? ",oracle_mu" : "") << '\n'
         << args.a << ',' << args.b << ',' << args.n << ',' << targets[0].fraction_str() << ','
         << targets[1].fraction_str() << ',' << targets[2].fraction_str() << ','
         << w.t3_raw.fraction_str() << ',' << w.expected_mu.fraction_str() << ','
         << yes_no(w.binary);
      if (oracle) os << ',' << oracle->value.fraction_str();
      os << '\n';
      break;
    case Format::text:
      os << "targets     " << tuple(targets) << '\n'
         << "t3_raw      " << w.t3_raw.str() << '\n'
         << "expected_mu " << show(w.expected_mu, o.precision) << '\n'
         << "binary      " << yes_no(w.binary) << '\n';
      if (oracle) os << "oracle_mu   " << show(oracle->value, o.precision) << '\n';
      break;
  }
  emit(o, os.str());
  if (mismatch) {
    std::cerr << "kronlab: witness cost disagrees with the oracle\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;
  bool verify = false;
};

int cmd_sweep(const SweepArgs& args, const Output& o, unsigned jobs) {
  const auto results =
      kronlab::run_sweep(args.a, args.b, args.from, args.to, verify_options(args.verify), jobs);
  std::vector<kronlab::SweepRow> rows;
  bool mismatch = false;
  for (const auto& r : results) {
    rows.push_back(r.row);
    mismatch = mismatch || kronlab::is_mismatch(r.checks);
  }

  std::ostringstream os;
  switch (o.format()) {
    case Format::json: {
      json j = json::array();
      for (const auto& row : rows) j.push_back(kronlab::row_to_json(row, o.precision));
      os << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      kronlab::write_csv(os, rows);
      break;
    case Format::text:
      os << "     n  r  R  S  alpha            beta             gap    verified\n";
      for (const auto& row : rows) {
        os << std::setw(6) << row.n << ' ' << std::setw(2) << row.r << ' ' << std::setw(2)
           << row.R << ' ' << std::setw(2) << row.S << "  " << std::left << std::setw(16)
           << row.alpha.fraction_str() << ' ' << std::setw(16) << row.beta.fraction_str() << ' '
           << std::setw(6) << yes_no(row.gap) << ' ' << kronlab::to_string(row.verified)
           << std::right << '\n';
      }
      break;
  }
  emit(o, os.str());
  if (mismatch) {
    std::cerr << "kronlab: formula disagrees with the oracle inside the asymptotic regime\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string set;
  std::int64_t grid = 0;
};

int cmd_bench(const BenchArgs& args, const Output& o) {
  const auto s = parse_spectrum(args.set);
  kronlab::SpectrumProblem(s, std::vector<Rational>(s.size()));
  const std::uint64_t per_call = kronlab::candidate_budget(s);
  std::uint64_t odd = 0;
  for (auto v : s) odd += static_cast<std::uint64_t>(v % 2 != 0);
  if (s.size() >= 64) throw kronlab::TooLarge("spectrum too large for binary enumeration");
  const std::uint64_t binary_targets = 1ULL << s.size();
  const std::uint64_t reduced_targets = odd > 0 ? binary_targets / 2 : binary_targets;
  std::optional<std::uint64_t> grid_targets;
  if (args.grid > 0) {
    std::uint64_t g = 1;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (g > UINT64_MAX / static_cast<std::uint64_t>(args.grid)) {
        throw kronlab::TooLarge("grid size overflows");
      }
      g *= static_cast<std::uint64_t>(args.grid);
    }
    grid_targets = g;
  }

  std::ostringstream os;
  switch (o.format()) {
    case Format::json: {
      json j = {{"spectrum", s},
                {"candidates_per_target", per_call},
                {"binary_targets", binary_targets},
                {"binary_targets_toggled", reduced_targets}};
      if (grid_targets) {
        j["grid_D"] = args.grid;
        j["grid_targets"] = *grid_targets;
      }
      os << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      os << "candidates_per_target,binary_targets,binary_targets_toggled,grid_targets\n"
         << per_call << ',' << binary_targets << ',' << reduced_targets << ','
         << (grid_targets ? std::to_string(*grid_targets) : "") << '\n';
      break;
    case Format::text:
      os << "candidates per target    " << per_call << '\n'
         << "binary targets           " << binary_targets << " (" << reduced_targets
         << " after toggling)\n";
      if (grid_targets) {
        os << "grid targets (D=" << args.grid << ")    " << *grid_targets << '\n';
      }
      break;
  }
  emit(o, os.str());
  return kExitOk;
}

unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kronecker constants for small integer sets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "kronlab 1.0.0");

  Output out;
  unsigned jobs = default_jobs();
  app.add_flag("--json", out.json, "JSON output");
  app.add_flag("--csv", out.csv, "CSV output");
  app.add_option("--out", out.out, "Write the report atomically to this path");
  app.add_option("--precision", out.precision, "Significant digits for decimal approximations")
      ->check(CLI::Range(1, 200));
  app.add_option("--jobs", jobs, "Worker threads")->envname("KRONLAB_JOBS")->check(CLI::Range(1u, 1024u));
  app.get_option("--json")->excludes(app.get_option("--csv"));

  MuArgs mu;
  auto* mu_cmd = app.add_subcommand("mu", "Exact cost mu_S(t) by vertex enumeration");
  mu_cmd->add_option("--set", mu.set, "Frequencies, comma separated")->required();
  mu_cmd->add_option("--t", mu.t, "Targets as p/q or decimals, comma separated")->required();
  mu_cmd->add_flag("--greedy", mu.greedy, "Also build the greedy certificate (three frequencies)");

  TripleArgs consts;
  auto* consts_cmd = app.add_subcommand("constants", "Closed-form alpha and beta for {a, b, n}");
  consts_cmd->add_option("a", consts.a)->required();
  consts_cmd->add_option("b", consts.b)->required();
  consts_cmd->add_option("n", consts.n)->required();
  consts_cmd->add_flag("--verify", consts.verify, "Run the extended oracle checks");
  consts_cmd->add_option("--grid", consts.grid, "Grid lower bound for alpha with step 1/D")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));

  TripleArgs wit;
  auto* wit_cmd = app.add_subcommand("witness", "Target at which the cost reaches alpha");
  wit_cmd->add_option("a", wit.a)->required();
  wit_cmd->add_option("b", wit.b)->required();
  wit_cmd->add_option("n", wit.n)->required();
  wit_cmd->add_flag("--verify", wit.verify, "Evaluate the witness with the oracle");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "One row per n in [from, to]");
  sweep_cmd->add_option("a", sweep.a)->required();
  sweep_cmd->add_option("b", sweep.b)->required();
  sweep_cmd->add_option("--from", sweep.from)->required();
  sweep_cmd->add_option("--to", sweep.to)->required();
  sweep_cmd->add_flag("--verify", sweep.verify, "Run the extended oracle checks on every row");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Candidate-count budgets for the oracle");
  bench_cmd->add_option("--set", bench.set, "Frequencies, comma separated")->required();
  bench_cmd->add_option("--grid", bench.grid, "Also count grid targets with step 1/D")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*mu_cmd) return cmd_mu(mu, out);
    if (*consts_cmd) return cmd_constants(consts, out, jobs);
    if (*wit_cmd) return cmd_witness(wit, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out, jobs);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const kronlab::InvalidInput& e) {
    std::cerr << "kronlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const kronlab::TooLarge& e) {
    std::cerr << "kronlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const kronlab::IoError& e) {
    std::cerr << "kronlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "kronlab: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
