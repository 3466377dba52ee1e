#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbb {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct NotRegularAtZero : std::domain_error {
  explicit NotRegularAtZero(const std::string& what)
      : std::domain_error("not regular at q=0: " + what) {}
};

namespace detail {

// n = s^2 * r with r squarefree
inline std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
  std::uint64_t s = 1, r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      r *= p;
    }
  }
  return {s, r * n};
}

inline std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

inline std::string mpq_str(const mpq_class& v) { return v.get_str(); }

}  // namespace detail

// Finite sum of rational multiples of square roots of squarefree integers.
class RadicalRational {
 public:
  using Radicand = std::uint64_t;
  using Term = std::pair<Radicand, mpq_class>;

  RadicalRational() = default;
  RadicalRational(long v) {
    if (v != 0) terms_.emplace_back(1, mpq_class(v));
  }
  RadicalRational(const mpq_class& v) {
    if (sgn(v) != 0) terms_.emplace_back(1, v);
  }

  // c * sqrt(n) for any positive integer n
  static RadicalRational sqrt_of(std::uint64_t n, const mpq_class& c = 1) {
    if (n == 0 || sgn(c) == 0) return {};
    auto [s, r] = detail::split_square(n);
    RadicalRational out;
    out.terms_.emplace_back(r, c * mpz_class(static_cast<unsigned long>(s)));
    return out;
  }

  // sqrt(a/b) = sqrt(a*b)/b
  static RadicalRational sqrt_of(const mpq_class& v) {
    if (sgn(v) < 0) throw std::domain_error("square root of a negative rational");
    if (sgn(v) == 0) return {};
    mpz_class prod = v.get_num() * v.get_den();
    return sqrt_of(prod.get_ui(), mpq_class(1, v.get_den()));
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
  mpq_class rational_part() const {
    return (!terms_.empty() && terms_[0].first == 1) ? terms_[0].second : mpq_class(0);
  }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Radicand> radicands() const {
    std::vector<Radicand> out;
    for (auto& t : terms_) out.push_back(t.first);
    return out;
  }

  RadicalRational operator-() const {
    RadicalRational out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  RadicalRational& operator+=(const RadicalRational& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (is_rational() && o.is_rational()) {
      terms_[0].second += o.terms_[0].second;
      if (sgn(terms_[0].second) == 0) terms_.clear();
      return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.cend() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.cend() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == terms_.cend() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        mpq_class s = a->second + b->second;
        if (sgn(s) != 0) out.emplace_back(a->first, s);
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  RadicalRational& operator-=(const RadicalRational& o) { return *this += -o; }

  RadicalRational& operator*=(const RadicalRational& o) { return *this = *this * o; }

  friend RadicalRational operator*(const RadicalRational& x, const RadicalRational& y) {
    if (x.terms_.empty() || y.terms_.empty()) return {};
    if (x.is_rational() && y.is_rational()) {
      RadicalRational out;
      out.terms_.emplace_back(1, x.terms_[0].second * y.terms_[0].second);
      return out;
    }
    std::map<Radicand, mpq_class> acc;
    for (auto& [m, a] : x.terms_) {
      for (auto& [n, b] : y.terms_) {
        Radicand g = std::gcd(m, n);
        Radicand r = (m / g) * (n / g);
        acc[r] += a * b * mpz_class(static_cast<unsigned long>(g));
      }
    }
    RadicalRational out;
    for (auto& [r, c] : acc)
      if (sgn(c) != 0) out.terms_.emplace_back(r, c);
    return out;
  }

  RadicalRational inverse() const {
    if (terms_.empty()) throw DivisionByZero();
    if (is_rational()) return RadicalRational(mpq_class(1 / terms_[0].second));
    Radicand p = detail::smallest_prime_factor(terms_.back().first);
    // x = a + b sqrt(p) with a, b free of sqrt(p); 1/x = (a - b sqrt(p)) / (a^2 - p b^2)
    RadicalRational conj;
    for (auto& [r, c] : terms_) {
      if (r % p == 0)
        conj.terms_.emplace_back(r, -c);
      else
        conj.terms_.emplace_back(r, c);
    }
    return conj * (*this * conj).inverse();
  }

  friend RadicalRational operator+(RadicalRational x, const RadicalRational& y) { return x += y; }
  friend RadicalRational operator-(RadicalRational x, const RadicalRational& y) { return x -= y; }
  friend RadicalRational operator/(const RadicalRational& x, const RadicalRational& y) {
    return x * y.inverse();
  }

  friend bool operator==(const RadicalRational& x, const RadicalRational& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t k = 0; k < x.terms_.size(); ++k)
      if (x.terms_[k].first != y.terms_[k].first || x.terms_[k].second != y.terms_[k].second)
        return false;
    return true;
  }

  friend bool operator<(const RadicalRational& x, const RadicalRational& y) {
    return std::lexicographical_compare(
        x.terms_.begin(), x.terms_.end(), y.terms_.begin(), y.terms_.end(),
        [](const Term& a, const Term& b) {
          if (a.first != b.first) return a.first < b.first;
          return a.second < b.second;
        });
  }

  // e.g. "3", "-1/2", "1+2*sqrt(2)", "1/2*sqrt(6)", "-sqrt(3)"
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [r, c] : terms_) {
      std::string s;
      if (r == 1) {
        s = detail::mpq_str(c);
      } else if (c == 1) {
        s = "sqrt(" + std::to_string(r) + ")";
      } else if (c == -1) {
        s = "-sqrt(" + std::to_string(r) + ")";
      } else {
        s = detail::mpq_str(c) + "*sqrt(" + std::to_string(r) + ")";
      }
      if (!first && s[0] != '-') out += '+';
      out += s;
      first = false;
    }
    return out;
  }

 private:
  std::vector<Term> terms_;  // sorted by radicand
};

inline bool is_zero(const RadicalRational& x) { return x.is_zero(); }
inline RadicalRational radical_invert(const RadicalRational& x) { return x.inverse(); }

// Laurent polynomial over RadicalRational, dense with an exponent offset.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) : LaurentPoly(RadicalRational(c)) {}
  LaurentPoly(const RadicalRational& c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  static LaurentPoly monomial(const RadicalRational& c, int e) {
    LaurentPoly p(c);
    if (!p.c_.empty()) p.low_ = e;
    return p;
  }
  static LaurentPoly q_pow(int e) { return monomial(RadicalRational(1), e); }
  // from coefficient list starting at exponent low
  static LaurentPoly from_coeffs(int low, std::vector<RadicalRational> c) {
    LaurentPoly p;
    p.low_ = low;
    p.c_ = std::move(c);
    p.trim();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && low_ == 0); }
  bool is_monomial() const { return c_.size() == 1; }
  // lowest / highest exponent; callers check is_zero first
  int ord() const { return low_; }
  int deg() const { return low_ + static_cast<int>(c_.size()) - 1; }
  const RadicalRational& coeff(int e) const {
    static const RadicalRational zero;
    if (e < low_ || e > deg() || c_.empty()) return zero;
    return c_[e - low_];
  }
  const std::vector<RadicalRational>& coeffs() const { return c_; }
  const RadicalRational& lead() const { return c_.back(); }
  const RadicalRational& trail() const { return c_.front(); }

  LaurentPoly shift(int k) const {
    LaurentPoly p = *this;
    if (!p.c_.empty()) p.low_ += k;
    return p;
  }

  LaurentPoly bar() const {
    if (c_.empty()) return {};
    LaurentPoly p;
    p.low_ = -deg();
    p.c_.assign(c_.rbegin(), c_.rend());
    return p;
  }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    int lo = std::min(low_, o.low_), hi = std::max(deg(), o.deg());
    if (lo < low_) {
      c_.insert(c_.begin(), low_ - lo, RadicalRational());
      low_ = lo;
    }
    if (hi > deg()) c_.resize(hi - low_ + 1);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[o.low_ - low_ + k] += o.c_[k];
    trim();
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    LaurentPoly p;
    p.low_ = a.low_ + b.low_;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, RadicalRational());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        p.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    p.trim();
    return p;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const RadicalRational& s) const {
    if (s.is_zero()) return {};
    LaurentPoly p = *this;
    for (auto& c : p.c_) c = c * s;
    p.trim();
    return p;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.c_.size() == b.c_.size() && (a.c_.empty() || a.low_ == b.low_) && a.c_ == b.c_;
  }

  bool all_rational() const {
    return std::all_of(c_.begin(), c_.end(), [](auto& c) { return c.is_rational(); });
  }

  // Terms listed from the highest exponent down, or lowest up when ascending is set.
  std::string str(bool ascending = false) const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    auto emit = [&](int e) {
      const RadicalRational& c = coeff(e);
      if (c.is_zero()) return;
      std::string cs = c.str();
      bool compound = c.terms().size() > 1;
      std::string mono;
      if (e == 1)
        mono = "q";
      else if (e != 0)
        mono = "q^" + std::to_string(e);
      std::string term;
      if (mono.empty()) {
        term = compound ? "(" + cs + ")" : cs;
      } else if (cs == "1") {
        term = mono;
      } else if (cs == "-1") {
        term = "-" + mono;
      } else {
        term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
      }
      if (!first && term[0] != '-') out += '+';
      out += term;
      first = false;
    };
    if (ascending)
      for (int e = ord(); e <= deg(); ++e) emit(e);
    else
      for (int e = deg(); e >= ord(); --e) emit(e);
    return out;
  }

 private:
  void trim() {
    std::size_t a = 0;
    while (a < c_.size() && c_[a].is_zero()) ++a;
    if (a == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t b = c_.size();
    while (c_[b - 1].is_zero()) --b;
    c_.erase(c_.begin() + b, c_.end());
    c_.erase(c_.begin(), c_.begin() + a);
    low_ += static_cast<int>(a);
  }

  int low_ = 0;
  std::vector<RadicalRational> c_;
};

inline bool is_zero(const LaurentPoly& p) { return p.is_zero(); }

namespace detail {

// Polynomial division in F[q]; both arguments must have ord() >= 0.
inline std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  std::vector<RadicalRational> r(a.is_zero() ? 0 : a.deg() + 1);
  for (int e = 0; e < static_cast<int>(r.size()); ++e) r[e] = a.coeff(e);
  int db = b.deg();
  RadicalRational inv_lead = b.lead().inverse();
  int dq = static_cast<int>(r.size()) - 1 - db;
  std::vector<RadicalRational> quo(dq >= 0 ? dq + 1 : 0);
  for (int k = dq; k >= 0; --k) {
    const RadicalRational& top = r[k + db];
    if (top.is_zero()) continue;
    RadicalRational f = top * inv_lead;
    quo[k] = f;
    for (int e = b.ord(); e <= db; ++e) {
      const RadicalRational& c = b.coeff(e);
      if (!c.is_zero()) r[k + e] -= f * c;
    }
  }
  return {LaurentPoly::from_coeffs(0, std::move(quo)), LaurentPoly::from_coeffs(0, std::move(r))};
}

inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
  while (!b.is_zero()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(a.lead().inverse());
}

}  // namespace detail

// Element of F(q): num / den with den a polynomial having constant term 1
// and gcd(num * q^-ord(num), den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(const mpq_class& c) : num_(RadicalRational(c)), den_(1) {}
  RatFunc(const RadicalRational& c) : num_(c), den_(1) {}
  RatFunc(const LaurentPoly& p) : num_(p), den_(1) {}
  RatFunc(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) { normalize(); }

  static RatFunc q() { return RatFunc(LaurentPoly::q_pow(1)); }
  static RatFunc q_pow(int e) { return RatFunc(LaurentPoly::q_pow(e)); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_constant(); }
  bool is_constant() const { return is_laurent() && num_.is_constant(); }
  RadicalRational constant() const { return num_.coeff(0); }

  // order of vanishing at q = 0 (zero has no order; callers check)
  int ord0() const { return num_.ord(); }
  // degree at infinity: deg(num) - deg(den); f is regular at infinity iff this is <= 0
  int deg_inf() const { return num_.deg() - den_.deg(); }
  bool regular_at_zero() const { return is_zero() || ord0() >= 0; }
  bool regular_at_infinity() const { return is_zero() || deg_inf() <= 0; }

  RadicalRational value_at_zero() const {
    if (!regular_at_zero()) throw NotRegularAtZero(str());
    return num_.coeff(0);
  }

  // Coefficients of the Laurent expansion at q = 0 for exponents lo..hi.
  std::vector<RadicalRational> series_at_zero(int lo, int hi) const {
    std::vector<RadicalRational> out(hi >= lo ? hi - lo + 1 : 0);
    if (is_zero() || hi < lo) return out;
    int o = num_.ord();
    int need = hi - o;  // number of inverse-denominator terms needed
    if (need < 0) return out;
    std::vector<RadicalRational> inv(need + 1);
    inv[0] = RadicalRational(1);
    for (int k = 1; k <= need; ++k) {
      RadicalRational s;
      for (int j = 1; j <= k && j <= den_.deg(); ++j) {
        const RadicalRational& d = den_.coeff(j);
        if (!d.is_zero() && !inv[k - j].is_zero()) s -= d * inv[k - j];
      }
      inv[k] = s;
    }
    for (int e = std::max(lo, o); e <= hi; ++e) {
      RadicalRational s;
      for (int a = o; a <= std::min(num_.deg(), e); ++a) {
        const RadicalRational& c = num_.coeff(a);
        if (!c.is_zero() && !inv[e - a].is_zero()) s += c * inv[e - a];
      }
      out[e - lo] = s;
    }
    return out;
  }

  RatFunc bar() const {
    if (is_zero()) return {};
    if (is_laurent()) return RatFunc(num_.bar());
    return RatFunc(num_.bar(), den_.bar());
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    if (b.is_laurent()) return RatFunc(a.num_ + b.num_ * a.den_, a.den_);
    if (a.is_laurent()) return RatFunc(a.num_ * b.den_ + b.num_, b.den_);
    LaurentPoly g = detail::poly_gcd(a.den_, b.den_);
    LaurentPoly da = detail::poly_divmod(a.den_, g).first;
    LaurentPoly db = detail::poly_divmod(b.den_, g).first;
    return RatFunc(a.num_ * db + b.num_ * da, da * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ * b.num_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }

  RatFunc inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFunc(den_, num_);
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return {};
    if (b.num_.is_monomial() && b.is_laurent()) {
      RadicalRational inv = b.num_.trail().inverse();
      RatFunc r = a;
      r.num_ = r.num_.scaled(inv).shift(-b.num_.ord());
      return r;
    }
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  bool all_rational() const { return num_.all_rational() && den_.all_rational(); }

  // Canonical text. With rational coefficients the fraction is rescaled to
  // coprime integer coefficients with positive denominator constant term.
  std::string str() const {
    if (is_laurent()) return num_.str();
    LaurentPoly n = num_, d = den_;
    if (all_rational()) {
      mpz_class l = 1, g = 0;
      for (auto* p : {&n, &d})
        for (auto& c : p->coeffs()) {
          if (c.is_zero()) continue;
          mpq_class v = c.rational_part();
          l = lcm(l, v.get_den());
          g = gcd(g, v.get_num());
        }
      mpq_class f(l, g);
      f.canonicalize();
      RadicalRational s(f);
      n = n.scaled(s);
      d = d.scaled(s);
    }
    auto wrap = [](const LaurentPoly& p, bool asc) {
      std::string s = p.str(asc);
      bool single = p.coeffs().size() - std::count_if(p.coeffs().begin(), p.coeffs().end(),
                                                      [](auto& c) { return c.is_zero(); }) <= 1;
      return single ? s : "(" + s + ")";
    };
    return wrap(n, false) + "/" + wrap(d, true);
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    int od = den_.ord();
    num_ = num_.shift(-od);
    den_ = den_.shift(-od);
    if (den_.deg() > 0) {
      int on = num_.ord();
      LaurentPoly g = detail::poly_gcd(num_.shift(-on), den_);
      if (g.deg() > 0) {
        num_ = detail::poly_divmod(num_.shift(-on), g).first.shift(on);
        den_ = detail::poly_divmod(den_, g).first;
      }
    }
    RadicalRational c = den_.coeff(0);
    if (!(c == RadicalRational(1))) {
      RadicalRational inv = c.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const RadicalRational& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const RatFunc& x) { return os << x.str(); }
inline RatFunc bar_scalar(const RatFunc& x) { return x.bar(); }
inline RadicalRational value_at_zero(const RatFunc& x) { return x.value_at_zero(); }

// [n]_r with q_i = q^r; n may be negative
inline LaurentPoly qint(int n, int r) {
  if (n == 0) return {};
  if (n < 0) return -qint(-n, r);
  std::vector<RadicalRational> c(2 * r * (n - 1) + 1);
  for (int t = 0; t < n; ++t) c[2 * r * t] = RadicalRational(1);
  return LaurentPoly::from_coeffs(-r * (n - 1), std::move(c));
}

inline LaurentPoly qfactorial(int n, int r) {
  LaurentPoly p(1);
  for (int k = 2; k <= n; ++k) p *= qint(k, r);
  return p;
}

// Generalized q-binomial prod_{s=1..k}[n+1-s]_i / [k]_i!, always a Laurent polynomial.
inline LaurentPoly qbinom(int n, int k, int r) {
  if (k < 0) throw std::invalid_argument("qbinom: k must be nonnegative");
  LaurentPoly top(1);
  for (int s = 1; s <= k; ++s) top *= qint(n + 1 - s, r);
  RatFunc v = RatFunc(top) / RatFunc(qfactorial(k, r));
  if (!v.is_laurent()) throw std::logic_error("qbinom: non-polynomial quotient");
  return v.num();
}

}  // namespace qbb
