// atto: command-line front end for asymmetric truncated Toeplitz operators.
//
//   atto <command> --config <file> [--csv <path>] [--seed N]
//
// Commands: space-info, build, check-membership, recover, verify-suite.
// Reports are JSON on stdout; errors are JSON objects on stderr.
// Exit codes: 0 ok, 1 validation failure, 2 NotInClass / NotDivisible,
// 3 tolerance failure in verify-suite.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "atto/characterize.hpp"
#include "atto/io.hpp"
#include "atto/linalg.hpp"
#include "atto/recover.hpp"
#include "atto/verify.hpp"

namespace fs = std::filesystem;
using namespace atto;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNotInClass = 2;
constexpr int kExitTolerance = 3;

struct Options {
  std::string command;
  std::string config_path;
  std::string csv_path;
  std::optional<std::uint64_t> seed;
};

struct Tolerances {
  std::size_t grid_floor = 0;
  double residual = 1e-8;
  double rank = 1e-8;
};

struct Job {
  Json config;
  fs::path base;
  Tolerances tol;
  std::uint64_t seed = 42;
  std::size_t cases = 50;
};

class ExitError : public std::runtime_error {
public:
  ExitError(int code, std::string kind, const std::string& message)
      : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}
  int code() const noexcept { return code_; }
  const std::string& kind() const noexcept { return kind_; }

private:
  int code_;
  std::string kind_;
};

[[noreturn]] void invalid(const std::string& message) { throw ExitError(kExitValidation, "InvalidConfig", message); }

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    invalid(path.string() + ": " + e.what());
  }
}

Job load_job(const Options& opt) {
  Job job;
  if (opt.config_path == "-") {
    try {
      job.config = Json::parse(std::cin);
    } catch (const Json::parse_error& e) {
      invalid(std::string("stdin: ") + e.what());
    }
    job.base = fs::current_path();
  } else {
    job.config = read_json_file(opt.config_path);
    job.base = fs::path(opt.config_path).parent_path();
  }
  const auto& c = job.config;
  if (!c.is_object()) invalid("config must be a JSON object");
  if (c.contains("command") && c["command"] != opt.command) {
    invalid("config command \"" + c["command"].get<std::string>() + "\" does not match \"" + opt.command + "\"");
  }
  if (c.contains("tolerances")) {
    const auto& t = c["tolerances"];
    if (t.contains("grid_floor")) {
      const auto floor = t["grid_floor"].get<long>();
      if (floor < 16) invalid("grid_floor must be at least 16");
      job.tol.grid_floor = static_cast<std::size_t>(floor);
    }
    if (t.contains("residual_threshold")) job.tol.residual = t["residual_threshold"].get<double>();
    if (t.contains("rank_threshold")) job.tol.rank = t["rank_threshold"].get<double>();
    if (!(job.tol.residual > 0.0) || !(job.tol.rank > 0.0)) invalid("thresholds must be positive");
  }
  if (c.contains("seed")) job.seed = c["seed"].get<std::uint64_t>();
  if (opt.seed) job.seed = *opt.seed;
  if (c.contains("cases")) {
    const auto n = c["cases"].get<long>();
    if (n < 1) invalid("cases must be positive");
    job.cases = static_cast<std::size_t>(n);
  }
  return job;
}

SpacePair load_pair(const Job& job, std::size_t extra_degree) {
  const auto& c = job.config;
  if (!c.contains("theta") || !c.contains("alpha")) invalid("config needs theta and alpha");
  const auto theta = inner_from_json(c["theta"]);
  const auto alpha = inner_from_json(c["alpha"]);
  if (theta.is_constant() || alpha.is_constant()) {
    throw Error(ErrorKind::ConstantInner, "theta and alpha must be nonconstant");
  }
  if (!divides(alpha, theta)) throw Error(ErrorKind::NotDivisible, "alpha does not divide theta");
  const std::size_t floor = job.tol.grid_floor ? job.tol.grid_floor : grid_floor();
  return SpacePair::build(theta, alpha, extra_degree, select_grid_size({theta, alpha}, extra_degree, floor));
}

std::optional<SymbolSpec> load_symbol(const Job& job) {
  if (!job.config.contains("symbol")) return std::nullopt;
  return symbol_from_json(job.config["symbol"]);
}

/// The operator of a job: an explicit matrix if given, else built from the symbol.
Matrix load_operator(const Job& job, const SpacePair& pair, const std::optional<SymbolSpec>& symbol) {
  const auto& c = job.config;
  Matrix a;
  if (c.contains("matrix")) {
    a = matrix_from_json(c["matrix"]);
  } else if (c.contains("matrix_file")) {
    a = matrix_from_json(read_json_file(job.base / c["matrix_file"].get<std::string>()));
  } else if (symbol) {
    a = build_atto(pair, resolve_symbol(pair, *symbol)).matrix;
  } else {
    invalid("config needs matrix, matrix_file or symbol");
  }
  if (a.rows() != static_cast<Eigen::Index>(pair.alpha_space.dim()) ||
      a.cols() != static_cast<Eigen::Index>(pair.theta_space.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "matrix must be deg(alpha) x deg(theta)");
  }
  return a;
}

Gauge load_gauge(const Job& job) {
  Gauge g;
  if (!job.config.contains("gauge")) return g;
  const auto& j = job.config["gauge"];
  if (j.contains("chi_at_zero")) {
    g.value = complex_from_json(j["chi_at_zero"]);
  } else if (j.contains("psi_at_zero")) {
    g.kind = GaugeKind::PsiAtZero;
    g.value = complex_from_json(j["psi_at_zero"]);
  } else {
    invalid("gauge needs chi_at_zero or psi_at_zero");
  }
  return g;
}

Json header(const std::string& command, const Job& job) {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = command;
  out["seed"] = job.seed;
  return out;
}

Json describe_pair(const SpacePair& p) {
  Json out;
  out["theta"] = inner_to_json(p.theta);
  out["alpha"] = inner_to_json(p.alpha);
  out["quotient"] = inner_to_json(p.quotient);
  out["grid_size"] = p.grid_size();
  return out;
}

Json describe_space(const ModelSpace& s) {
  Json out;
  out["dim"] = s.dim();
  out["theta_at_zero"] = complex_to_json(s.theta_at_zero());
  Json zeros = Json::array();
  for (auto a : s.ordered_zeros()) zeros.push_back(complex_to_json(a));
  out["ordered_zeros"] = zeros;
  out["k0"] = vector_to_json(s.kernels().k0);
  out["k0_tilde"] = vector_to_json(s.kernels().k0_tilde);
  out["shift"] = matrix_to_json(s.compressed_shift().shift);
  out["shift_adjoint"] = matrix_to_json(s.compressed_shift().adjoint);
  out["conjugation"] = matrix_to_json(s.conjugation().matrix);
  return out;
}

void write_csv(const Options& opt, const Matrix& a) {
  if (opt.csv_path.empty()) return;
  std::ofstream out(opt.csv_path);
  if (!out) invalid("cannot write " + opt.csv_path);
  out << matrix_to_csv(a);
}

int space_info(const Options& opt, const Job& job) {
  const auto p = load_pair(job, 0);
  Json out = header(opt.command, job);
  out["pair"] = describe_pair(p);
  out["theta_space"] = describe_space(p.theta_space);
  out["alpha_space"] = describe_space(p.alpha_space);
  if (p.quotient_space) out["quotient_space"] = describe_space(*p.quotient_space);
  write_csv(opt, p.theta_space.compressed_shift().shift);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int build(const Options& opt, const Job& job) {
  const auto symbol = load_symbol(job);
  if (!symbol) invalid("build needs a symbol");
  const auto p = load_pair(job, symbol->band());
  const auto s = resolve_symbol(p, *symbol);
  const auto a = build_atto(p, s);
  Json out = header(opt.command, job);
  out["pair"] = describe_pair(p);
  out["symbol"] = symbol_to_json(s);
  out["matrix"] = matrix_to_json(a.matrix);
  write_csv(opt, a.matrix);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int check_membership(const Options& opt, const Job& job) {
  const auto symbol = load_symbol(job);
  const auto p = load_pair(job, symbol ? symbol->band() : 0);
  const Matrix a = load_operator(job, p, symbol);
  auto report = membership_extract(p, a);
  report.tolerance = job.tol.residual * (1.0 + operator_norm(a));
  report.in_class = report.residual <= report.tolerance;

  Json out = header(opt.command, job);
  out["pair"] = describe_pair(p);
  out["report"] = membership_to_json(report);
  out["defect_one_rank"] = numerical_rank(defect_one(p, a), job.tol.rank);
  out["defect_two_rank"] = numerical_rank(defect_two(p, a), job.tol.rank);
  write_csv(opt, a);
  std::cout << out.dump(2) << '\n';
  if (!report.in_class) throw Error(ErrorKind::NotInClass, "operator fails the first characterization");
  return 0;
}

Json recovery_json(const std::string& path, const SymbolPair& s, Complex gauge_c, double residual) {
  Json out;
  out["path"] = path;
  out["psi"] = vector_to_json(s.psi);
  out["chi"] = vector_to_json(s.chi);
  out["gauge_c"] = complex_to_json(gauge_c);
  out["residual"] = residual;
  return out;
}

int recover(const Options& opt, const Job& job) {
  const auto symbol = load_symbol(job);
  const auto p = load_pair(job, symbol ? symbol->band() : 0);
  const Matrix a = load_operator(job, p, symbol);
  const double scale = 1.0 + operator_norm(a);

  const auto first = recover_symbol_from_actions(p, a, load_gauge(job));
  const Matrix a1 = build_atto(p, first.symbol).matrix;
  const auto extracted = extract_mu_nu(p, a);
  const auto second = recover_symbol_from_mu_nu(p, extracted.data);
  const Matrix a2 = build_atto(p, second.symbol).matrix;
  const auto fit = fit_gauge(p, first.symbol, second.symbol);

  Json out = header(opt.command, job);
  out["pair"] = describe_pair(p);
  Json paths = Json::array();
  paths.push_back(recovery_json("actions", first.symbol, first.scalars.c, operator_norm(a1 - a)));
  paths.push_back(recovery_json("mu_nu", second.symbol, second.c, operator_norm(a2 - a)));
  out["recoveries"] = paths;
  Json scalars;
  scalars["a"] = complex_to_json(first.scalars.a);
  scalars["b"] = complex_to_json(first.scalars.b);
  scalars["c"] = complex_to_json(first.scalars.c);
  scalars["determinant"] = complex_to_json(first.scalars.determinant);
  out["scalars"] = scalars;
  out["mu_nu"] = mu_nu_to_json(extracted.data);
  out["mu_nu"]["residual"] = extracted.residual;
  out["mu_nu"]["symmetric"] = second.symmetric;
  Json agreement;
  agreement["matrix_residual"] = operator_norm(a1 - a2);
  agreement["gauge_c"] = complex_to_json(fit.c);
  agreement["gauge_residual"] = fit.residual;
  agreement["agree"] = operator_norm(a1 - a2) <= job.tol.residual * scale && fit.residual <= job.tol.residual * scale;
  out["agreement"] = agreement;
  write_csv(opt, a1);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int verify_suite(const Options& opt, const Job& job) {
  if (!opt.csv_path.empty()) invalid("verify-suite has no matrix to write");
  const auto checks = run_verify_suite(job.seed, job.cases);
  Json out = header(opt.command, job);
  out["cases"] = job.cases;
  out["passed"] = checks.all_passed();
  out["checks"] = checks_to_json(checks);
  std::cout << out.dump(2) << '\n';
  return checks.all_passed() ? 0 : kExitTolerance;
}

void report_error(const std::string& kind, const std::string& message) {
  Json err;
  err["schema"] = kReportSchema;
  err["error"]["kind"] = kind;
  err["error"]["message"] = message;
  std::cerr << err.dump() << '\n';
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInClass:
    case ErrorKind::NotDivisible:
      return kExitNotInClass;
    default:
      return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric truncated Toeplitz operators on model spaces"};
  app.require_subcommand(1);
  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"space-info", "dimensions, kernels and shift matrices of K_theta and K_alpha"},
      {"build", "matrix of the operator with the given symbol"},
      {"check-membership", "test a matrix against the first characterization"},
      {"recover", "recover a symbol along both paths"},
      {"verify-suite", "run the invariant battery"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config_path, "JSON job file, or - for stdin")->required();
    sub->add_option("--csv", opt.csv_path, "also write the primary matrix as CSV");
    sub->add_option("--seed", opt.seed, "seed for randomized suites");
    sub->callback([&opt, name = std::string(name)] { opt.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return kExitValidation;
  }

  try {
    const Job job = load_job(opt);
    if (opt.command == "space-info") return space_info(opt, job);
    if (opt.command == "build") return build(opt, job);
    if (opt.command == "check-membership") return check_membership(opt, job);
    if (opt.command == "recover") return recover(opt, job);
    return verify_suite(opt, job);
  } catch (const ExitError& e) {
    report_error(e.kind(), e.what());
    return e.code();
  } catch (const Error& e) {
    report_error(std::string(to_string(e.kind())), e.what());
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    report_error("InvalidConfig", e.what());
    return kExitValidation;
  }
}
