#include "mahler/parse.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "mahler/error.hpp"

namespace mahler {

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view src) : src_(src) {}

  PolyExpr parse() {
    PolyExpr out;
    skip();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = take() == '-';
      skip();
    }
    while (true) {
      WordTerm term = parse_term();
      if (negative) term.coefficient = -term.coefficient;
      if (!term.coefficient.is_zero()) out.terms.push_back(std::move(term));
      skip();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("expected '+' or '-', found '") + c + "'");
      negative = take() == '-';
      skip();
      if (at_end()) fail("expected a term");
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  char take() { return src_[pos_++]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const { throw ParseError(pos, message); }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  bool factor_starts() const {
    const char c = peek();
    return is_digit(c) || c == '(' || c == 'i' || c == 'x' || c == 'y' || c == '.' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  WordTerm parse_term() {
    WordTerm term{GaussianRational(1), {}};
    bool any = false;
    while (true) {
      skip();
      if (at_end() || !factor_starts()) {
        if (!any) fail(at_end() ? "expected a term" : std::string("unexpected character '") + peek() + "'");
        break;
      }
      parse_factor(term);
      any = true;
      skip();
      if (peek() == '*') {
        take();
        skip();
        if (at_end() || !factor_starts()) fail("expected a factor after '*'");
      }
    }
    return term;
  }

  void parse_factor(WordTerm& term) {
    const char c = peek();
    if (is_digit(c) || c == '.') {
      mpq_class v = parse_number();
      if (peek() == 'i') {
        take();
        term.coefficient *= GaussianRational(0, v);
      } else {
        term.coefficient *= GaussianRational(v, 0);
      }
    } else if (c == 'i') {
      take();
      term.coefficient *= GaussianRational(0, 1);
    } else if (c == '(') {
      term.coefficient *= parse_complex();
    } else {
      const int g = parse_generator();
      skip();
      std::int64_t e = 1;
      if (peek() == '^') {
        take();
        skip();
        e = parse_exponent();
      }
      if (e == 0) return;
      term.word.push_back({g, e});
    }
  }

  mpq_class parse_number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    while (is_digit(peek())) digits += take();
    if (peek() == '.') {
      take();
      while (is_digit(peek())) {
        digits += take();
        ++frac_digits;
      }
    }
    if (digits.empty()) fail_at(start, "expected a number");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    mpq_class v(num, den);
    if (peek() == '/') {
      take();
      const std::size_t dstart = pos_;
      std::string d;
      while (is_digit(peek())) d += take();
      if (d.empty()) fail_at(dstart, "expected a denominator");
      mpz_class dv(d, 10);
      if (dv == 0) fail_at(dstart, "zero denominator");
      v /= dv;
    }
    v.canonicalize();
    return v;
  }

  // '(' [sign] number ['i'] [(+|-) [number] 'i'] ')', also '(' [sign] 'i' ')'.
  GaussianRational parse_complex() {
    take();  // '('
    GaussianRational out(0);
    bool seen_real = false;
    bool seen_imag = false;
    bool first = true;
    while (true) {
      skip();
      if (peek() == ')') {
        if (first) fail("empty parentheses");
        take();
        return out;
      }
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = take() == '-';
        skip();
      } else if (!first) {
        fail("expected '+', '-' or ')'");
      }
      mpq_class v = 1;
      bool has_number = false;
      if (is_digit(peek()) || peek() == '.') {
        v = parse_number();
        has_number = true;
      }
      if (negative) v = -v;
      if (peek() == 'i') {
        take();
        if (seen_imag) fail("repeated imaginary part");
        seen_imag = true;
        out += GaussianRational(0, v);
      } else {
        if (!has_number) fail("expected a number or 'i'");
        if (seen_real || seen_imag) fail("real part must come first");
        seen_real = true;
        out += GaussianRational(v, 0);
      }
      first = false;
      if (at_end()) fail("unterminated '('");
    }
  }

  int parse_generator() {
    const std::size_t start = pos_;
    const char c = take();
    if (c == 'y') return 1;
    if (c == 'x') {
      if (is_digit(peek())) {
        const char d = take();
        if (is_digit(peek()) || d == '0') fail_at(start, "unknown generator, expected x, y or x1..x9");
        return d - '1';
      }
      return 0;
    }
    fail_at(start, std::string("unknown generator '") + c + "'");
  }

  std::int64_t parse_exponent() {
    bool paren = false;
    if (peek() == '(') {
      take();
      skip();
      paren = true;
    }
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = take() == '-';
      skip();
    }
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_) fail_at(start, "exponent out of range");
    if (paren) {
      skip();
      if (peek() != ')') fail("expected ')'");
      take();
    }
    return negative ? -v : v;
  }
};

std::string format_word(const std::vector<Letter>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += '*';
    const int g = word[i].generator;
    out += g == 0 ? "x" : g == 1 ? "y" : "x" + std::to_string(g + 1);
    if (word[i].exponent != 1) out += "^" + std::to_string(word[i].exponent);
  }
  return out;
}

// Coefficient text for a term printed after its sign has been taken out.
std::string format_magnitude(const GaussianRational& c, bool has_word) {
  if (c.is_real()) {
    if (c.real() == 1 && has_word) return {};
    return c.real().get_str() + (has_word ? "*" : "");
  }
  if (sgn(c.real()) == 0) {
    const std::string imag = c.imag() == 1 ? "i" : c.imag().get_str() + "i";
    return imag + (has_word ? "*" : "");
  }
  return "(" + c.str() + ")" + (has_word ? "*" : "");
}

std::int64_t parse_count(std::string_view s, std::size_t offset, std::string_view src) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
    throw ParseError(offset, "expected a positive integer in group specifier '" + std::string(src) + "'");
  return v;
}

}  // namespace

PolyExpr parse_poly(std::string_view src) { return PolyParser(src).parse(); }

std::string format_poly(const PolyExpr& poly) {
  if (poly.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < poly.terms.size(); ++i) {
    const auto& t = poly.terms[i];
    // A term reads as negative when its coefficient is a negative real or a
    // negative pure imaginary; mixed complex coefficients keep their parentheses.
    const bool negative = t.coefficient.is_real() ? sgn(t.coefficient.real()) < 0
                                                  : sgn(t.coefficient.real()) == 0 && sgn(t.coefficient.imag()) < 0;
    const GaussianRational magnitude = negative ? -t.coefficient : t.coefficient;
    if (i == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += format_magnitude(magnitude, !t.word.empty());
    out += format_word(t.word);
  }
  return out;
}

GroupSpec parse_group(std::string_view src) {
  std::string s;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(src[i]))) continue;
    s += src[i];
    offsets.push_back(i);
  }
  const std::string_view v(s);
  auto offset = [&](std::size_t i) { return i < offsets.size() ? offsets[i] : src.size(); };
  if (v.empty()) throw ParseError(0, "empty group specifier");
  try {
    if (v == "Dinf") return GroupSpec::dihedral(0);
    if (v == "Dicinf") return GroupSpec::dicyclic(0);
    if (v.starts_with("Dic")) return GroupSpec::dicyclic(parse_count(v.substr(3), offset(3), src));
    if (v.starts_with("D")) return GroupSpec::dihedral(parse_count(v.substr(1), offset(1), src));
    if (v.starts_with("F")) return GroupSpec::free(static_cast<int>(parse_count(v.substr(1), offset(1), src)));
    if (v.starts_with("C")) {
      std::vector<std::int64_t> orders;
      std::size_t i = 0;
      while (true) {
        if (i >= v.size() || v[i] != 'C') throw ParseError(offset(i), "expected 'C' in free product specifier");
        const std::size_t end = std::min(v.find('*', i), v.size());
        orders.push_back(parse_count(v.substr(i + 1, end - i - 1), offset(i + 1), src));
        if (end == v.size()) break;
        i = end + 1;
      }
      if (orders.size() == 1) return GroupSpec::abelian(orders);
      return GroupSpec::free_product_cyclic(orders);
    }
    if (v.starts_with("Z")) {
      std::vector<std::int64_t> moduli;
      std::size_t i = 0;
      while (true) {
        const std::size_t end = std::min(v.find('x', i), v.size());
        const std::string_view factor = v.substr(i, end - i);
        if (factor == "Z") {
          moduli.push_back(0);
        } else if (factor.starts_with("Z^")) {
          const auto l = parse_count(factor.substr(2), offset(i + 2), src);
          if (l > 64) throw ParseError(offset(i + 2), "too many free abelian factors");
          moduli.insert(moduli.end(), static_cast<std::size_t>(l), 0);
        } else if (factor.starts_with("Z/")) {
          moduli.push_back(parse_count(factor.substr(2), offset(i + 2), src));
        } else {
          throw ParseError(offset(i), "expected Z, Z^l or Z/n in '" + std::string(src) + "'");
        }
        if (end == v.size()) break;
        i = end + 1;
      }
      return GroupSpec::abelian(moduli);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  throw ParseError(0, "unknown group specifier '" + std::string(src) + "'");
}

}  // namespace mahler
