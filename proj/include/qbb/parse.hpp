#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "qbb/cartan.hpp"
#include "qbb/scalar.hpp"

namespace qbb {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool at_end() { return peek() == '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000000L) fail("integer literal too large");
      advance();
    }
    return v;
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("expected index name");
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) advance();
    return s_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class RatFuncParser {
 public:
  explicit RatFuncParser(const std::string& s) : c_(s) {}
  RatFunc parse() {
    RatFunc v = expr();
    if (!c_.at_end()) c_.fail(std::string("unexpected '") + c_.peek() + "'");
    return v;
  }

 private:
  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (c_.accept('+'))
        v += term();
      else if (c_.accept('-'))
        v -= term();
      else
        return v;
    }
  }
  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      if (c_.accept('*')) {
        v *= unary();
      } else if (c_.peek() == '/') {
        Cursor at = c_;
        c_.accept('/');
        RatFunc d = unary();
        if (d.is_zero()) at.fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  RatFunc unary() {
    if (c_.accept('-')) return -unary();
    if (c_.accept('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc base = atom();
    if (!c_.accept('^')) return base;
    bool neg = false;
    if (c_.accept('-'))
      neg = true;
    else
      c_.accept('+');
    Cursor at = c_;
    long e = c_.integer();
    if (e > 1000) at.fail("exponent too large");
    RatFunc v(1);
    for (long k = 0; k < e; ++k) v *= base;
    if (neg) {
      if (v.is_zero()) at.fail("zero raised to a negative power");
      v = v.inverse();
    }
    return v;
  }
  RatFunc atom() {
    char ch = c_.peek();
    if (ch == '(') {
      c_.accept('(');
      RatFunc v = expr();
      c_.expect(')');
      return v;
    }
    if (ch == 'q') {
      c_.accept('q');
      return RatFunc::q();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return RatFunc(c_.integer());
    if (ch == '\0') c_.fail("unexpected end of input");
    c_.fail(std::string("unexpected '") + ch + "'");
  }
  Cursor c_;
};

}  // namespace detail

inline RatFunc parse_ratfunc(const std::string& s) { return detail::RatFuncParser(s).parse(); }

// "2*i,1*j" or "i,j" or "0"
inline RootVector parse_weight(const Datum& d, const std::string& s) {
  detail::Cursor c(s);
  RootVector v = d.zero();
  if (c.peek() == '0') {
    c.integer();
    if (!c.at_end()) c.fail("unexpected input after 0");
    return v;
  }
  do {
    long k = 1;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      k = c.integer();
      c.expect('*');
    }
    detail::Cursor at = c;
    at.skip_ws();
    std::string name = c.identifier();
    std::size_t i;
    try {
      i = d.index_of(name);
    } catch (const UnknownIndex&) {
      at.fail("unknown index '" + name + "'");
    }
    v[i] += static_cast<int>(k);
  } while (c.accept(','));
  if (!c.at_end()) c.fail(std::string("unexpected '") + c.peek() + "'");
  return v;
}

// "i=3,j=0"; unspecified indices are 0
inline DominantWeight parse_lambda(const Datum& d, const std::string& s) {
  detail::Cursor c(s);
  DominantWeight v(d.size(), 0);
  if (c.at_end()) return v;
  do {
    detail::Cursor at = c;
    at.skip_ws();
    std::string name = c.identifier();
    std::size_t i;
    try {
      i = d.index_of(name);
    } catch (const UnknownIndex&) {
      at.fail("unknown index '" + name + "'");
    }
    c.expect('=');
    v[i] = static_cast<int>(c.integer());
  } while (c.accept(','));
  if (!c.at_end()) c.fail(std::string("unexpected '") + c.peek() + "'");
  return v;
}

}  // namespace qbb
