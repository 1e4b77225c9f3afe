#include "keypoly/parse.hpp"

#include <cctype>

#include "keypoly/error.hpp"

namespace keypoly {

namespace {

class Parser {
 public:
  Parser(const FieldSpec& spec, const std::string& text, bool allow_x) : spec_(spec), s_(text), allow_x_(allow_x) {}

  Poly run() {
    Poly r = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "position " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly sum() {
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    Poly acc = product();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) {
        acc += product();
      } else if (eat('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Poly product() {
    Poly acc = power();
    for (;;) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        size_t at = pos_;
        Poly d = power();
        if (d.degree() > 0) {
          pos_ = at;
          fail("division by a polynomial in x");
        }
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc * d.coeffs()[0].inverse();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      if (pos_ - start > 18) fail("exponent too large");
      long e = std::stol(s_.substr(start, pos_ - start));
      if (neg) {
        if (base.degree() > 0 || base.is_zero()) fail("negative exponent needs a nonzero x-free base");
        return Poly::constant(base.coeffs()[0].inverse().pow(e));
      }
      if (base.degree() == 0 && !base.is_zero()) {
        const FieldElement& c = base.coeffs()[0];
        if (c.num().is_monomial() && c.den().is_monomial()) return Poly::constant(c.pow(e));
      }
      if (e > 100000) fail("exponent too large");
      return base.pow(int(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = sum();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(FieldElement(spec_, Rational(Integer(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "x" && allow_x_) return Poly::x(spec_);
      if (name == "t" && spec_.nvars() == 1) return Poly::constant(FieldElement::variable(spec_, 0));
      if (name == "u" && spec_.nvars() == 2) return Poly::constant(FieldElement::variable(spec_, 0));
      if (name == "v" && spec_.nvars() == 2) return Poly::constant(FieldElement::variable(spec_, 1));
      pos_ = start;
      throw Error(ErrorKind::UnknownSymbol, "position " + std::to_string(start) + ": unknown symbol '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const FieldSpec& spec_;
  const std::string& s_;
  bool allow_x_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(const FieldSpec& spec, const std::string& text) { return Parser(spec, text, true).run(); }

FieldElement parse_field_element(const FieldSpec& spec, const std::string& text) {
  Poly p = Parser(spec, text, false).run();
  return p.is_zero() ? FieldElement::zero(spec) : p.coeffs()[0];
}

}  // namespace keypoly
