#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xnf/lie.hpp"
#include "xnf/resonance.hpp"

namespace xnf {

/// Syntax error at a 1-based line and column.
struct ParseError : UsageError {
  ParseError(int line, int column, const std::string& message);
  int line;
  int column;
  std::string message;
};

/// Position of the first character of a text fragment inside its document.
struct TextOrigin {
  int line = 1;
  int column = 1;
};

/// Sums of terms `coef * x^a * z1^k1 * ... * zn^kn * dVAR` with dVAR in
/// {dx, dz1..dzn}. Coefficients use the GaussianRational syntax and may be
/// parenthesized sums; only x takes negative exponents. Terms above the
/// degree cap are dropped.
VectorField parse_field(std::string_view text, const Shape& shape, TextOrigin origin = {});
/// The same grammar without the dVAR factor.
TransverseSeries parse_series(std::string_view text, const Shape& shape, TextOrigin origin = {});
/// Comma-separated coefficients.
EigenData parse_eigenvalues(std::string_view text, TextOrigin origin = {});

/// `key: value` header lines (`#` starts a comment), a `---` line, then a body.
/// Header keys: name, n, degree, x_cap, mu. A field body is one expression;
/// an automorphism body has lines `x: expr` (optional) and `zN: expr`.
struct Document {
  std::string name;
  int n = 1;
  int degree = 0;
  std::optional<int> x_cap;
  std::optional<EigenData> mu;
  std::string body;
  int body_line = 1;  // line of the body's first character

  Shape shape() const { return {n, degree, {}}; }
};

Document parse_document(std::string_view text);
VectorField document_field(const Document& doc);
Automorphism document_automorphism(const Document& doc);

}  // namespace xnf
