#include "atto/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace atto {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad("complex value must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v[k]));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("vector must be an array of [re, im]");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
  return v;
}

Json inner_to_json(const InnerFunction& f) {
  Json zeros = Json::array();
  for (auto a : f.zeros()) zeros.push_back(complex_to_json(a));
  Json out;
  out["zeros"] = zeros;
  out["constant"] = complex_to_json(f.constant());
  return out;
}

InnerFunction inner_from_json(const Json& j) {
  if (!j.is_object()) bad("inner function must be an object");
  if (j.contains("monomial")) {
    const auto& n = j["monomial"];
    if (!n.is_number_integer() || n.get<long>() < 0) bad("monomial degree must be a nonnegative integer");
    return InnerFunction::monomial(n.get<std::size_t>());
  }
  if (!j.contains("zeros")) bad("inner function needs \"zeros\" or \"monomial\"");
  std::vector<Complex> zeros;
  for (const auto& z : j["zeros"]) zeros.push_back(complex_from_json(z));
  const Complex c = j.contains("constant") ? complex_from_json(j["constant"]) : Complex(1.0);
  return InnerFunction(std::move(zeros), c);
}

Json matrix_to_json(const Matrix& a) {
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  Json data = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) data.push_back(complex_to_json(a(r, c)));
  }
  out["data"] = data;
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    bad("matrix must have rows, cols and data");
  }
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  if (rows < 0 || cols < 0) bad("matrix dimensions must be nonnegative");
  const auto& data = j["data"];
  Matrix a(rows, cols);
  if (!data.is_array()) bad("matrix data must be an array");
  const auto count = static_cast<std::size_t>(rows * cols);
  const bool flat = data.size() == count && !(cols == 1 && rows > 0 && data[0].is_array() && data[0].size() == 1);
  if (flat) {
    for (Eigen::Index k = 0; k < rows * cols; ++k) a(k / cols, k % cols) = complex_from_json(data[k]);
  } else {
    if (data.size() != static_cast<std::size_t>(rows)) bad("matrix data has the wrong length");
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!data[r].is_array() || data[r].size() != static_cast<std::size_t>(cols)) bad("matrix row has the wrong length");
      for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = complex_from_json(data[r][c]);
    }
  }
  return a;
}

std::size_t SymbolSpec::band() const {
  std::size_t out = 0;
  if (laurent) {
    for (const auto& [k, c] : *laurent) out = std::max(out, static_cast<std::size_t>(std::labs(k)));
  }
  return out;
}

SymbolSpec symbol_from_json(const Json& j) {
  SymbolSpec spec;
  if (!j.is_object()) bad("symbol must be an object");
  if (j.contains("laurent")) {
    std::map<long, Complex> terms;
    for (const auto& [key, value] : j["laurent"].items()) {
      char* end = nullptr;
      const long k = std::strtol(key.c_str(), &end, 10);
      if (key.empty() || *end != '\0') bad("laurent keys must be integers");
      terms[k] += complex_from_json(value);
    }
    spec.laurent = std::move(terms);
  } else if (j.contains("pair")) {
    const auto& p = j["pair"];
    if (!p.contains("psi") || !p.contains("chi")) bad("symbol pair needs psi and chi");
    spec.pair = SymbolPair{vector_from_json(p["psi"]), vector_from_json(p["chi"])};
  } else {
    bad("symbol needs \"laurent\" or \"pair\"");
  }
  return spec;
}

SymbolPair resolve_symbol(const SpacePair& pair, const SymbolSpec& spec) {
  if (spec.laurent) {
    return normalize_symbol(pair, GridFunction::from_laurent(pair.grid_size(), *spec.laurent));
  }
  const auto& s = *spec.pair;
  if (s.psi.size() != static_cast<Eigen::Index>(pair.alpha_space.dim()) ||
      s.chi.size() != static_cast<Eigen::Index>(pair.theta_space.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "psi must have deg alpha and chi deg theta coefficients");
  }
  return s;
}

Json symbol_to_json(const SymbolPair& s) {
  Json out;
  out["psi"] = vector_to_json(s.psi);
  out["chi"] = vector_to_json(s.chi);
  return out;
}

Json mu_nu_to_json(const CharData& d) {
  Json out;
  out["mu"] = vector_to_json(d.mu);
  out["nu"] = vector_to_json(d.nu);
  return out;
}

Json membership_to_json(const MembershipReport& r) {
  Json out;
  out["in_class"] = r.in_class;
  out["residual"] = r.residual;
  out["tolerance"] = r.tolerance;
  out["psi"] = vector_to_json(r.symbol.psi);
  out["chi"] = vector_to_json(r.symbol.chi);
  return out;
}

Json checks_to_json(const CheckSet& checks) {
  Json out = Json::array();
  for (const auto& c : checks.results()) {
    Json item;
    item["name"] = c.name;
    item["cases"] = c.cases;
    item["worst"] = c.worst;
    item["relation"] = c.lower_bound ? ">=" : "<=";
    item["bound"] = c.bound;
    item["passed"] = c.passed();
    out.push_back(item);
  }
  return out;
}

std::string matrix_to_csv(const Matrix& a) {
  std::ostringstream out;
  char buf[64];
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c > 0) out << ',';
      const Complex z = a(r, c);
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace atto
