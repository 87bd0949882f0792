#include "coxsaito/parse.hpp"

#include <cctype>
#include <stdexcept>

namespace coxsaito {

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, const std::string& s) : ring_(ring), s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_poly: " + what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
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

  Poly expr() {
    Poly acc(ring_);
    bool neg = eat('-');
    if (!neg) eat('+');
    Poly t = term();
    acc += neg ? -t : t;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by non-constant");
        acc *= d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      b = b.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return b;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("')' expected");
      return p;
    }
    if (eat('-')) return -atom();
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(ring_, Scalar(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "sqrt") {
        if (!eat('(')) fail("'(' expected");
        skip();
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        int d = std::stoi(s_.substr(ds, pos_ - ds));
        if (!eat(')')) fail("')' expected");
        return Poly::constant(ring_, Scalar::sqrt_of(d));
      }
      for (int i = 0; i < ring_->nvars(); ++i)
        if (ring_->names[i] == name) return Poly::var(ring_, i);
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const RingPtr& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, const std::string& text) { return Parser(ring, text).parse(); }

}  // namespace coxsaito
