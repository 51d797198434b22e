#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "atto/characterize.hpp"
#include "atto/inner_function.hpp"
#include "atto/operator.hpp"
#include "atto/recover.hpp"
#include "atto/verify.hpp"

namespace atto {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "atto-report/1";

/// [re, im]; a bare number is read as real.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"zeros": [[re,im],...], "constant": [re,im]} or {"monomial": n}.
Json inner_to_json(const InnerFunction& f);
InnerFunction inner_from_json(const Json& j);

/// {"rows": R, "cols": C, "data": [[re,im], ...]} row-major. Nested rows are
/// also accepted on input.
Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

/// {"laurent": {"k": [re,im], ...}} or {"pair": {"psi": [...], "chi": [...]}}.
struct SymbolSpec {
  std::optional<std::map<long, Complex>> laurent;
  std::optional<SymbolPair> pair;

  /// Largest |k| of a Laurent spec, for grid sizing.
  std::size_t band() const;
};
SymbolSpec symbol_from_json(const Json& j);
/// Normalizes a Laurent symbol; checks the dimensions of a pair.
SymbolPair resolve_symbol(const SpacePair& pair, const SymbolSpec& spec);

Json symbol_to_json(const SymbolPair& s);
Json mu_nu_to_json(const CharData& d);
Json membership_to_json(const MembershipReport& r);
Json checks_to_json(const CheckSet& checks);

std::string matrix_to_csv(const Matrix& a);

}  // namespace atto
