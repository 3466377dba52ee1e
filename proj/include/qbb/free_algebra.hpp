#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbb/cartan.hpp"
#include "qbb/combinat.hpp"
#include "qbb/scalar.hpp"

namespace qbb {

struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Letter {
  int index = 0;
  int level = 1;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Words compare lexicographically letter by letter, letters by (index, level).
using Word = std::vector<Letter>;

inline RootVector weight_of(const Datum& d, const Word& w) {
  RootVector v = d.zero();
  for (auto& x : w) v[x.index] += x.level;
  return v;
}

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline std::string word_str(const Datum& d, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto& x : w) s += "f[" + d.name(x.index) + "," + std::to_string(x.level) + "]";
  return s;
}

// f_{i,c} = f_{i c_1} ... f_{i c_t}
inline Word letters(int i, const Parts& c) {
  Word w;
  for (int l : c) w.push_back({i, l});
  return w;
}

namespace detail {
inline void words_rec(const Datum& d, RootVector& rest, Word& cur, std::vector<Word>& out) {
  bool done = true;
  for (int x : rest) done = done && x == 0;
  if (done) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    int maxl = d.is_real(i) ? std::min(rest[i], 1) : rest[i];
    for (int l = 1; l <= maxl; ++l) {
      rest[i] -= l;
      cur.push_back({static_cast<int>(i), l});
      words_rec(d, rest, cur, out);
      cur.pop_back();
      rest[i] += l;
    }
  }
}
}  // namespace detail

// All admissible words of weight -alpha, sorted.
inline std::vector<Word> words_of_weight(const Datum& d, const RootVector& alpha) {
  std::vector<Word> out;
  if (!nonnegative(alpha)) return out;
  RootVector rest = alpha;
  Word cur;
  detail::words_rec(d, rest, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

class FreeElement {
 public:
  using Terms = std::map<Word, RatFunc>;
  FreeElement() = default;
  explicit FreeElement(const Word& w, const RatFunc& c = RatFunc(1)) {
    if (!c.is_zero()) terms_[w] = c;
  }
  static FreeElement one() { return FreeElement(Word{}); }
  static FreeElement letter(int i, int l) { return FreeElement(Word{{i, l}}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? RatFunc() : it->second;
  }

  void add(const Word& w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FreeElement& operator+=(const FreeElement& o) {
    for (auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  FreeElement& operator-=(const FreeElement& o) {
    for (auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator*(const RatFunc& s, const FreeElement& x) {
    FreeElement out;
    if (s.is_zero()) return out;
    for (auto& [w, c] : x.terms_) out.terms_[w] = s * c;
    return out;
  }
  friend FreeElement operator*(const FreeElement& x, const FreeElement& y) {
    FreeElement out;
    for (auto& [a, c] : x.terms_)
      for (auto& [b, e] : y.terms_) out.add(concat(a, b), c * e);
    return out;
  }
  friend bool operator==(const FreeElement& x, const FreeElement& y) { return x.terms_ == y.terms_; }

  FreeElement star() const {
    FreeElement out;
    for (auto& [w, c] : terms_) out.add(reversed(w), c);
    return out;
  }
  FreeElement bar() const {
    FreeElement out;
    for (auto& [w, c] : terms_) out.add(w, c.bar());
    return out;
  }

 private:
  Terms terms_;
};

// Elements of F (x) F with the twisted product
// (x1 (x) x2)(y1 (x) y2) = q^{-(|x2|,|y1|)} x1 y1 (x) x2 y2.
class TensorElement {
 public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, RatFunc>;
  TensorElement() = default;
  TensorElement(const Word& a, const Word& b, const RatFunc& c = RatFunc(1)) { add(a, b, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coeff(const Word& a, const Word& b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? RatFunc() : it->second;
  }
  void add(const Word& a, const Word& b, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(Key{a, b}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  TensorElement& operator+=(const TensorElement& o) {
    for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  friend bool operator==(const TensorElement& x, const TensorElement& y) { return x.terms_ == y.terms_; }

  static TensorElement product(const Datum& d, const TensorElement& x, const TensorElement& y) {
    TensorElement out;
    for (auto& [kx, cx] : x.terms_)
      for (auto& [ky, cy] : y.terms_) {
        int e = -d.pairing(weight_of(d, kx.second), weight_of(d, ky.first));
        out.add(concat(kx.first, ky.first), concat(kx.second, ky.second), RatFunc::q_pow(e) * cx * cy);
      }
    return out;
  }

 private:
  Terms terms_;
};

inline TensorElement letter_coproduct(const Datum& d, const Letter& x) {
  TensorElement t;
  for (int m = 0; m <= x.level; ++m) {
    int n = x.level - m;
    Word a, b;
    if (m > 0) a.push_back({x.index, m});
    if (n > 0) b.push_back({x.index, n});
    t.add(a, b, RatFunc::q_pow(-d.qparen_exp(x.index) * m * n));
  }
  return t;
}

// rho: F -> F (x) F, the algebra map into the twisted tensor product.
inline TensorElement coproduct(const Datum& d, const FreeElement& x) {
  TensorElement out;
  for (auto& [w, c] : x.terms()) {
    TensorElement t(Word{}, Word{}, c);
    for (auto& l : w) t = TensorElement::product(d, t, letter_coproduct(d, l));
    out += t;
  }
  return out;
}

// (rho (x) id) or (id (x) rho) applied to a tensor; results keyed by word triples.
using Triple = std::map<std::tuple<Word, Word, Word>, RatFunc>;

inline Triple coproduct_left(const Datum& d, const TensorElement& t) {
  Triple out;
  for (auto& [k, c] : t.terms()) {
    TensorElement split = coproduct(d, FreeElement(k.first));
    for (auto& [k2, c2] : split.terms()) {
      auto& slot = out[{k2.first, k2.second, k.second}];
      slot += c * c2;
    }
  }
  std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
  return out;
}
inline Triple coproduct_right(const Datum& d, const TensorElement& t) {
  Triple out;
  for (auto& [k, c] : t.terms()) {
    TensorElement split = coproduct(d, FreeElement(k.second));
    for (auto& [k2, c2] : split.terms()) {
      auto& slot = out[{k.first, k2.first, k2.second}];
      slot += c * c2;
    }
  }
  std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
  return out;
}

// rho_{i,l} collects the components x_c of rho(x) = sum x_c (x) f_{i,c} + ...;
// rho^{i,l} collects those of rho(x) = sum f_{i,c} (x) x_c + ....
enum class Extract { sub, super };

inline std::map<Parts, FreeElement> extract(const Datum& d, Extract side, int i, int l, const FreeElement& x) {
  std::map<Parts, FreeElement> out;
  TensorElement t = coproduct(d, x);
  for (auto& [k, c] : t.terms()) {
    const Word& fw = side == Extract::sub ? k.second : k.first;
    const Word& other = side == Extract::sub ? k.first : k.second;
    Parts parts;
    bool ok = true;
    for (auto& x : fw) {
      ok = ok && x.index == i;
      parts.push_back(x.level);
    }
    if (!ok || size_of(parts) != l) continue;
    out[parts].add(other, c);
  }
  std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
  return out;
}

// The real-index maps rho_i and rho^i.
inline FreeElement extract_real(const Datum& d, Extract side, int i, const FreeElement& x) {
  if (!d.is_real(i)) throw PreconditionViolated("extract_real: index is not real");
  auto m = extract(d, side, i, 1, x);
  auto it = m.find(Parts{1});
  return it == m.end() ? FreeElement() : it->second;
}

inline FreeElement power(const FreeElement& x, int n) {
  FreeElement p = FreeElement::one();
  for (int k = 0; k < n; ++k) p = p * x;
  return p;
}

inline FreeElement divided_power(const Datum& d, int i, int n) {
  if (!d.is_real(i)) throw PreconditionViolated("divided_power: index is not real");
  if (n < 0) throw PreconditionViolated("divided_power: negative exponent");
  return RatFunc(1) / RatFunc(qfactorial(n, d.r(i))) * power(FreeElement::letter(i, 1), n);
}

inline FreeElement f_composition(const Datum& d, int j, const Parts& c) {
  if (d.is_real(j)) return power(FreeElement::letter(j, 1), size_of(c));
  return FreeElement(letters(j, c));
}

// Higher order Serre element sum_{r+s=m} (-1)^r q_i^{sign r(-a_ij n - m + 1)} f_i^(r) f_{j,c} f_i^(s).
inline FreeElement serre_element(const Datum& d, int i, int j, int m, const Parts& c, int sign) {
  int n = size_of(c);
  if (!d.is_real(i)) throw PreconditionViolated("serre_element: i must be real");
  if (m < 1 || n < 0) throw PreconditionViolated("serre_element: need m >= 1, n >= 0");
  if (i == j && n != 0) throw PreconditionViolated("serre_element: i = j requires n = 0");
  if (!(m > -d.a(i, j) * n)) throw PreconditionViolated("serre_element: need m > -a_ij n");
  if (sign != 1 && sign != -1) throw PreconditionViolated("serre_element: sign must be +1 or -1");
  for (int p : c)
    if (p < 1) throw PreconditionViolated("serre_element: composition parts must be positive");
  FreeElement mid = f_composition(d, j, c);
  FreeElement out;
  int t = -d.a(i, j) * n - m + 1;
  for (int r = 0; r <= m; ++r) {
    RatFunc coef = RatFunc::q_pow(sign * r * t * d.r(i));
    if (r % 2) coef = -coef;
    out += coef * (divided_power(d, i, r) * mid * divided_power(d, i, m - r));
  }
  return out;
}

inline FreeElement commutator_element(const Datum& d, int i, int k, int j, int l) {
  if (d.a(i, j) != 0) throw PreconditionViolated("commutator_element: a_ij must be 0");
  if (k < 1 || l < 1 || (d.is_real(i) && k != 1) || (d.is_real(j) && l != 1))
    throw PreconditionViolated("commutator_element: inadmissible level");
  FreeElement a = FreeElement::letter(i, k), b = FreeElement::letter(j, l);
  return a * b - b * a;
}

}  // namespace qbb
