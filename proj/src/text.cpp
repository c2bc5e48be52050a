#include "xnf/text.hpp"

#include <cctype>

namespace xnf {

ParseError::ParseError(int l, int c, const std::string& m)
    : UsageError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + m),
      line(l),
      column(c),
      message(m) {}

namespace {

constexpr int kMaxExponent = 1000000;

enum class Mode { constant, series, field };

struct Term {
  GaussianRational coeff{1};
  int x_exp = 0;
  Exponent k;
  int dvar = -2;  // -2 none, -1 dx, i >= 0 dz_{i+1}
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view s, TextOrigin origin, int n) : s_(s), origin_(origin), n_(n) {}

  [[noreturn]] void fail(std::size_t at, const std::string& what) const {
    int line = origin_.line, col = origin_.column;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::size_t pos() {
    skip_ws();
    return pos_;
  }
  void expect_end() {
    if (!at_end()) fail(pos_, std::string("unexpected character '") + s_[pos_] + "'");
  }

  // Signed sum of terms; in constant mode the result is a single term.
  std::vector<Term> sum(Mode mode) {
    std::vector<Term> out;
    bool first = true;
    while (true) {
      int sign = 1;
      char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      std::size_t start = pos();
      Term t = term(mode);
      if (sign < 0) t.coeff = -t.coeff;
      const bool bare_zero = t.coeff.is_zero() && t.x_exp == 0 && total_degree(t.k) == 0;
      if (mode == Mode::field && t.dvar == -2 && !bare_zero) fail(start, "term has no dx or dz factor");
      out.push_back(std::move(t));
    }
    return out;
  }

  GaussianRational constant() {
    GaussianRational total;
    for (const auto& t : sum(Mode::constant)) total += t.coeff;
    return total;
  }

  std::size_t scan_comma() {
    if (peek() != ',') return std::string_view::npos;
    return pos_++;
  }

 private:
  Term term(Mode mode) {
    Term t;
    t.k.assign(static_cast<std::size_t>(n_), 0);
    factor(t, mode);
    while (peek() == '*') {
      ++pos_;
      factor(t, mode);
    }
    return t;
  }

  mpz_class digits(const char* what) {
    std::size_t start = pos();
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail(start, std::string("expected ") + what);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  int exponent(bool allow_negative) {
    if (peek() != '^') return 1;
    ++pos_;
    std::size_t start = pos();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    mpz_class e = digits("exponent");
    if (negative && !allow_negative) fail(start, "negative exponent is only allowed on x");
    if (e > kMaxExponent) fail(start, "exponent overflow");
    const int v = static_cast<int>(e.get_si());
    return negative ? -v : v;
  }

  void factor(Term& t, Mode mode) {
    const std::size_t start = pos();
    const char c = peek();
    if (c == '\0') fail(start, "expected a term");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = digits("digits");
      Rational value(num);
      if (peek() == '/') {
        ++pos_;
        std::size_t at = pos();
        mpz_class den = digits("denominator");
        if (den == 0) fail(at, "zero denominator");
        value = Rational(num, den);
        value.canonicalize();
      }
      t.coeff *= GaussianRational(value);
      return;
    }
    if (c == '(') {
      ++pos_;
      GaussianRational inner = constant();
      if (peek() != ')') fail(pos(), "expected ')'");
      ++pos_;
      t.coeff *= inner;
      return;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(start, std::string("unexpected character '") + c + "'");
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "i") {
      t.coeff *= GaussianRational::i();
      return;
    }
    if (mode == Mode::constant) fail(start, "variable '" + name + "' in a constant");
    if (name == "x") {
      t.x_exp += exponent(true);
      return;
    }
    const bool is_d = name.size() > 1 && name[0] == 'd';
    const std::string var = is_d ? name.substr(1) : name;
    int index = -2;
    if (var == "x") {
      index = -1;
    } else if (var.size() > 1 && var[0] == 'z' && var[1] != '0' &&
               var.find_first_not_of("0123456789", 1) == std::string::npos && var.size() < 8) {
      const int i = std::stoi(var.substr(1));
      if (i <= n_) index = i - 1;
    }
    if (index == -2 || (!is_d && index == -1)) fail(start, "unknown variable '" + name + "'");
    if (is_d) {
      if (mode != Mode::field) fail(start, "derivative '" + name + "' outside a vector field");
      if (t.dvar != -2) fail(start, "more than one derivative in a term");
      if (peek() == '^') fail(pos(), "derivatives take no exponent");
      t.dvar = index;
      return;
    }
    t.k[static_cast<std::size_t>(index)] += exponent(false);
  }

  std::string_view s_;
  TextOrigin origin_;
  int n_;
  std::size_t pos_ = 0;
};

void accumulate(std::vector<TransverseSeries>& parts, const Term& t, const Shape& shape) {
  if (t.coeff.is_zero() || t.dvar == -2 || total_degree(t.k) > shape.degree_cap) return;
  const std::size_t slot = static_cast<std::size_t>(t.dvar + 1);
  parts[slot] += TransverseSeries::monomial(shape, t.k, LaurentPoly::monomial(t.coeff, t.x_exp));
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Blanks out `#` comments, keeping offsets intact.
std::string strip_comments(std::string_view s) {
  std::string out(s);
  bool comment = false;
  for (char& c : out) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (comment) c = ' ';
  }
  return out;
}

int header_int(const std::string& value, int line, int col, int min) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw ParseError(line, col, "expected an integer");
  }
  if (used != value.size()) throw ParseError(line, col + static_cast<int>(used), "expected an integer");
  if (v < min) throw ParseError(line, col, "value must be at least " + std::to_string(min));
  return v;
}

}  // namespace

VectorField parse_field(std::string_view text, const Shape& shape, TextOrigin origin) {
  Parser p(text, origin, shape.n);
  std::vector<TransverseSeries> parts(static_cast<std::size_t>(shape.n + 1), TransverseSeries(shape));
  for (const auto& t : p.sum(Mode::field)) accumulate(parts, t, shape);
  p.expect_end();
  TransverseSeries a = parts.front();
  parts.erase(parts.begin());
  return {std::move(a), std::move(parts)};
}

TransverseSeries parse_series(std::string_view text, const Shape& shape, TextOrigin origin) {
  Parser p(text, origin, shape.n);
  std::vector<TransverseSeries> parts(1, TransverseSeries(shape));
  for (auto t : p.sum(Mode::series)) {
    t.dvar = -1;
    accumulate(parts, t, shape);
  }
  p.expect_end();
  return parts.front();
}

EigenData parse_eigenvalues(std::string_view text, TextOrigin origin) {
  Parser p(text, origin, 0);
  EigenData out;
  do {
    out.push_back(p.constant());
  } while (p.scan_comma() != std::string_view::npos);
  p.expect_end();
  return out;
}

Document parse_document(std::string_view raw) {
  const std::string text = strip_comments(raw);
  Document doc;
  std::optional<std::pair<std::string, TextOrigin>> mu_text;
  std::size_t start = 0;
  int line = 1;
  bool separated = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view row(text.data() + start, end - start);
    const std::string content = trim(row);
    if (content == "---") {
      separated = true;
      doc.body = end < text.size() ? text.substr(end + 1) : std::string();
      doc.body_line = line + 1;
      break;
    }
    if (!content.empty()) {
      const int indent = static_cast<int>(row.find_first_not_of(" \t\r")) + 1;
      const std::size_t colon = row.find(':');
      if (colon == std::string_view::npos) throw ParseError(line, indent, "expected 'key: value'");
      const std::string key = trim(row.substr(0, colon));
      std::string_view rest = row.substr(colon + 1);
      const std::size_t lead = rest.find_first_not_of(" \t");
      const int vcol = static_cast<int>(colon) + 2 + static_cast<int>(lead == std::string_view::npos ? 0 : lead);
      const std::string value = trim(rest);
      if (value.empty()) throw ParseError(line, vcol, "missing value for '" + key + "'");
      if (key == "name") {
        doc.name = value;
      } else if (key == "n") {
        doc.n = header_int(value, line, vcol, 1);
      } else if (key == "degree") {
        doc.degree = header_int(value, line, vcol, 1);
      } else if (key == "x_cap") {
        doc.x_cap = header_int(value, line, vcol, 0);
      } else if (key == "mu") {
        mu_text = {value, TextOrigin{line, vcol}};
      } else {
        throw ParseError(line, indent, "unknown key '" + key + "'");
      }
    }
    if (end == text.size()) {
      start = end + 1;
      ++line;
      break;
    }
    start = end + 1;
    ++line;
  }
  if (!separated) throw ParseError(line - 1 < 1 ? 1 : line - 1, 1, "missing '---' before the body");
  if (mu_text) {
    doc.mu = parse_eigenvalues(mu_text->first, mu_text->second);
    if (static_cast<int>(doc.mu->size()) != doc.n)
      throw ParseError(mu_text->second.line, mu_text->second.column, "mu needs exactly n entries");
  }
  return doc;
}

VectorField document_field(const Document& doc) {
  if (doc.degree < 1) throw UsageError("no degree given (header 'degree' or --degree)");
  return parse_field(doc.body, doc.shape(), {doc.body_line, 1});
}

Automorphism document_automorphism(const Document& doc) {
  if (doc.degree < 1) throw UsageError("no degree given (header 'degree' or --degree)");
  const Shape shape = doc.shape();
  std::optional<TransverseSeries> img_x;
  std::vector<std::optional<TransverseSeries>> img_z(static_cast<std::size_t>(doc.n));
  std::size_t start = 0;
  int line = doc.body_line;
  const std::string& body = doc.body;
  while (start < body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    std::string_view row(body.data() + start, end - start);
    if (!trim(row).empty()) {
      const int indent = static_cast<int>(row.find_first_not_of(" \t\r")) + 1;
      const std::size_t colon = row.find(':');
      if (colon == std::string_view::npos) throw ParseError(line, indent, "expected 'variable: image'");
      const std::string var = trim(row.substr(0, colon));
      const TextOrigin origin{line, static_cast<int>(colon) + 2};
      TransverseSeries image = parse_series(row.substr(colon + 1), shape, origin);
      std::optional<TransverseSeries>* slot = nullptr;
      if (var == "x") {
        slot = &img_x;
      } else if (var.size() > 1 && var[0] == 'z' && var.find_first_not_of("0123456789", 1) == std::string::npos &&
                 var.size() < 8) {
        const int i = std::stoi(var.substr(1));
        if (i >= 1 && i <= doc.n) slot = &img_z[static_cast<std::size_t>(i - 1)];
      }
      if (!slot) throw ParseError(line, indent, "unknown variable '" + var + "'");
      if (slot->has_value()) throw ParseError(line, indent, "duplicate image for '" + var + "'");
      *slot = std::move(image);
    }
    start = end + 1;
    ++line;
  }
  std::vector<TransverseSeries> z;
  for (int i = 0; i < doc.n; ++i) {
    if (!img_z[static_cast<std::size_t>(i)])
      throw ParseError(line, 1, "missing image for z" + std::to_string(i + 1));
    z.push_back(*img_z[static_cast<std::size_t>(i)]);
  }
  return {img_x.value_or(TransverseSeries::x(shape)), std::move(z)};
}

}  // namespace xnf
