#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qbb/combinat.hpp"
#include "qbb/form.hpp"
#include "qbb/free_algebra.hpp"
#include "qbb/matrix.hpp"
#include "qbb/memo.hpp"

namespace qbb {

// All alpha in Q_+ of the given height, lexicographically ordered.
inline std::vector<RootVector> weights_of_height(const Datum& d, int h) {
  std::vector<RootVector> out;
  RootVector cur(d.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k + 1 == d.size()) {
      cur[k] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, h);
  return out;
}

inline std::vector<RootVector> weights_up_to(const Datum& d, int h) {
  std::vector<RootVector> out;
  for (int k = 0; k <= h; ++k)
    for (auto& a : weights_of_height(d, k)) out.push_back(a);
  return out;
}

inline std::string weight_str(const Datum& d, const RootVector& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += ",";
    s += std::to_string(a[i]) + "*" + d.name(i);
  }
  return s.empty() ? "0" : s;
}

inline std::string parts_str(const Parts& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + ")";
}

// An element of U^-_{-weight}, as coordinates over the pivot words of that weight space.
struct UElement {
  RootVector weight;
  Vec<RatFunc> coords;
  bool is_zero() const { return is_zero_vec(coords); }
  friend bool operator==(const UElement& a, const UElement& b) = default;
};

// U^-_{-alpha} realized as F_{-alpha} modulo the kernel of the Gram matrix.
struct WeightSpace {
  RootVector alpha;
  std::vector<Word> words;
  std::map<Word, std::size_t> index;
  std::vector<std::size_t> pivots;
  Matrix<RatFunc> gram;       // on pivot words
  Matrix<RatFunc> expansion;  // column w: the image of words[w] in the pivot basis

  std::size_t dim() const { return pivots.size(); }
  const Word& pivot_word(std::size_t k) const { return words[pivots[k]]; }
};

enum class Deriv { eprime, delta, edoubleprime };
enum class Kash { f, e };

struct Primitive {
  int i = 0, l = 0;
  FreeElement expansion;
  UElement element;
  RatFunc tau;
};

// u = sum over candidates of x_j * (b_{i,c_j} k_j), with k_j running over a basis of K_i at
// the remaining weight. For real i the part list (1,...,1) of length n stands for b_i^{(n)}.
struct Decomposition {
  struct Candidate {
    Parts c;
    RootVector rest;
    std::size_t k;
  };
  std::vector<Candidate> candidates;
  std::map<std::pair<Parts, std::size_t>, std::size_t> lookup;
  Matrix<RatFunc> m;
  Matrix<RatFunc> inv;
};

class UMinus {
 public:
  explicit UMinus(LusztigForm form) : form_(std::move(form)) {}
  UMinus(const UMinus&) = delete;
  UMinus& operator=(const UMinus&) = delete;

  const Datum& datum() const { return form_.datum(); }
  const LusztigForm& form() const { return form_; }

  std::shared_ptr<const WeightSpace> space(const RootVector& a) const {
    return spaces_.get(a, [&] { return build_space(a); });
  }
  std::size_t dim(const RootVector& a) const { return space(a)->dim(); }

  UElement zero(const RootVector& a) const { return {a, Vec<RatFunc>(dim(a))}; }
  UElement basis(const RootVector& a, std::size_t k) const {
    UElement u = zero(a);
    u.coords.at(k) = RatFunc(1);
    return u;
  }
  UElement one() const { return basis(datum().zero(), 0); }

  UElement reduce(const RootVector& a, const FreeElement& x) const {
    auto s = space(a);
    UElement u{a, Vec<RatFunc>(s->dim())};
    for (auto& [w, c] : x.terms()) {
      auto it = s->index.find(w);
      if (it == s->index.end()) throw PreconditionViolated("word " + word_str(datum(), w) + " not of weight " + weight_str(datum(), a));
      for (std::size_t p = 0; p < s->dim(); ++p)
        if (!s->expansion(p, it->second).is_zero()) u.coords[p] += c * s->expansion(p, it->second);
    }
    return u;
  }
  UElement reduce(const FreeElement& x) const {
    if (x.is_zero()) throw PreconditionViolated("cannot infer the weight of 0");
    return reduce(weight_of(datum(), x.terms().begin()->first), x);
  }
  FreeElement lift(const UElement& u) const {
    auto s = space(u.weight);
    FreeElement x;
    for (std::size_t p = 0; p < s->dim(); ++p) x.add(s->pivot_word(p), u.coords[p]);
    return x;
  }

  UElement add(UElement a, const UElement& b) const {
    same_weight(a, b);
    a.coords = qbb::add(a.coords, b.coords);
    return a;
  }
  UElement sub(UElement a, const UElement& b) const {
    same_weight(a, b);
    a.coords = qbb::sub(a.coords, b.coords);
    return a;
  }
  UElement scale(UElement a, const RatFunc& s) const {
    a.coords = qbb::scale(a.coords, s);
    return a;
  }

  UElement mul(const UElement& x, const UElement& y) const {
    RootVector a = x.weight + y.weight;
    auto sx = space(x.weight), sy = space(y.weight), s = space(a);
    UElement out{a, Vec<RatFunc>(s->dim())};
    for (std::size_t p = 0; p < sx->dim(); ++p) {
      if (x.coords[p].is_zero()) continue;
      for (std::size_t r = 0; r < sy->dim(); ++r) {
        if (y.coords[r].is_zero()) continue;
        RatFunc c = x.coords[p] * y.coords[r];
        std::size_t w = s->index.at(concat(sx->pivot_word(p), sy->pivot_word(r)));
        for (std::size_t k = 0; k < s->dim(); ++k)
          if (!s->expansion(k, w).is_zero()) out.coords[k] += c * s->expansion(k, w);
      }
    }
    return out;
  }

  RatFunc pair(const UElement& x, const UElement& y) const {
    if (x.weight != y.weight) return RatFunc();
    return dot(x.coords, space(x.weight)->gram, y.coords);
  }

  // Pivot words are bar-invariant, so bar acts on coordinates only.
  UElement bar(UElement u) const {
    for (auto& c : u.coords) c = c.bar();
    return u;
  }
  UElement star(const UElement& u) const {
    auto s = space(u.weight);
    UElement out = zero(u.weight);
    for (std::size_t p = 0; p < s->dim(); ++p) {
      if (u.coords[p].is_zero()) continue;
      out.coords = qbb::add(out.coords, qbb::scale(column(s, reversed(s->pivot_word(p))), u.coords[p]));
    }
    return out;
  }

  // ---- primitive generators

  std::shared_ptr<const Primitive> primitive(int i, int l) const {
    return primitives_.get({i, l}, [&] { return build_primitive(i, l); });
  }
  const UElement& b(int i, int l = 1) const { return primitive(i, l)->element; }
  const RatFunc& tau(int i, int l = 1) const { return primitive(i, l)->tau; }

  // b_{i,c} = b_{i,c_1} ... b_{i,c_t}
  UElement b_parts(int i, const Parts& c) const {
    UElement u = one();
    for (int p : c) u = mul(u, b(i, p));
    return u;
  }
  UElement divided_power(int i, int n) const {
    return reduce(datum().simple(i, n), qbb::divided_power(datum(), i, n));
  }
  // The i-decomposition building block for the part list c.
  UElement component_basis(int i, const Parts& c) const {
    if (datum().is_real(i)) return divided_power(i, static_cast<int>(c.size()));
    return b_parts(i, c);
  }
  // Index sets C_i restricted to total size s.
  std::vector<Parts> component_parts(int i, int s) const {
    if (datum().is_real(i)) return {Parts(s, 1)};
    if (datum().is_isotropic(i)) return partitions(s);
    return compositions(s);
  }
  int max_level(int i, const RootVector& a) const { return datum().is_real(i) ? std::min(1, a[i]) : a[i]; }

  // ---- derivations

  // e'_{i,l} (prefix twist), delta_{i,l} (suffix twist) and e''_{i,l} on a single word.
  FreeElement derive_word(Deriv mode, int i, int l, const Word& w) const {
    const Datum& d = datum();
    if (mode == Deriv::edoubleprime) {
      RootVector rest = weight_of(d, w) - d.simple(i, l);
      return RatFunc::q_pow(l * d.pair_simple(i, rest)) * derive_word(Deriv::eprime, i, l, reversed(w)).star();
    }
    FreeElement out;
    const int qp = d.qparen_exp(i);
    const int n = static_cast<int>(w.size());
    int acc = 0;  // (alpha_i, weight of the letters already passed)
    for (int s = 0; s < n; ++s) {
      int k = mode == Deriv::eprime ? s : n - 1 - s;
      const Letter& a = w[k];
      if (a.index == i && a.level >= l) {
        Word v = w;
        if (a.level == l)
          v.erase(v.begin() + k);
        else
          v[k].level = a.level - l;
        out.add(v, RatFunc::q_pow(-qp * l * (a.level - l) - l * acc));
      }
      acc += a.level * d.pair(i, a.index);
    }
    return out;
  }

  std::shared_ptr<const Matrix<RatFunc>> derivation_matrix(Deriv mode, int i, int l, const RootVector& a) const {
    return derivations_.get({static_cast<int>(mode), i, l, a}, [&] {
      RootVector t = a - datum().simple(i, l);
      auto s = space(a);
      Matrix<RatFunc> m(dim(t), s->dim());
      if (m.rows() == 0) return m;
      for (std::size_t p = 0; p < s->dim(); ++p) {
        UElement v = reduce(t, derive_word(mode, i, l, s->pivot_word(p)));
        for (std::size_t k = 0; k < m.rows(); ++k) m(k, p) = v.coords[k];
      }
      return m;
    });
  }
  UElement derive(Deriv mode, int i, int l, const UElement& u) const {
    RootVector t = u.weight - datum().simple(i, l);
    auto m = derivation_matrix(mode, i, l, u.weight);
    return {t, m->apply(u.coords)};
  }
  UElement eprime(int i, int l, const UElement& u) const { return derive(Deriv::eprime, i, l, u); }

  // ---- i-decomposition

  // Basis of K_i = intersection of ker e'_{i,l} at weight a.
  std::shared_ptr<const std::vector<Vec<RatFunc>>> kernel_basis(int i, const RootVector& a) const {
    return kernels_.get({i, a}, [&] {
      std::vector<Vec<RatFunc>> out;
      std::size_t n = dim(a);
      int top = max_level(i, a);
      if (top == 0) {
        for (std::size_t k = 0; k < n; ++k) {
          Vec<RatFunc> v(n);
          v[k] = RatFunc(1);
          out.push_back(std::move(v));
        }
        return out;
      }
      std::vector<std::shared_ptr<const Matrix<RatFunc>>> blocks;
      std::size_t rows = 0;
      for (int l = 1; l <= top; ++l) {
        blocks.push_back(derivation_matrix(Deriv::eprime, i, l, a));
        rows += blocks.back()->rows();
      }
      Matrix<RatFunc> st(rows, n);
      std::size_t r0 = 0;
      for (auto& b : blocks) {
        for (std::size_t r = 0; r < b->rows(); ++r)
          for (std::size_t c = 0; c < n; ++c) st(r0 + r, c) = (*b)(r, c);
        r0 += b->rows();
      }
      return kernel(st);
    });
  }

  std::shared_ptr<const Decomposition> decomposition(int i, const RootVector& a) const {
    return decompositions_.get({i, a}, [&] {
      Decomposition dec;
      std::vector<Vec<RatFunc>> cols;
      for (int s = 0; s <= a[i]; ++s) {
        RootVector rest = a - datum().simple(i, s);
        auto ker = kernel_basis(i, rest);
        for (auto& c : component_parts(i, s)) {
          UElement bc = component_basis(i, c);
          for (std::size_t k = 0; k < ker->size(); ++k) {
            dec.lookup[{c, k}] = dec.candidates.size();
            dec.candidates.push_back({c, rest, k});
            cols.push_back(mul(bc, UElement{rest, (*ker)[k]}).coords);
          }
        }
      }
      std::size_t n = dim(a);
      if (cols.size() != n)
        throw InternalError("i-decomposition at " + weight_str(datum(), a) + " has " + std::to_string(cols.size()) +
                            " candidates for dimension " + std::to_string(n));
      dec.m = Matrix<RatFunc>::from_columns(cols, n);
      if (n > 0 && rank(dec.m) != n)
        throw InternalError("singular i-decomposition system at " + weight_str(datum(), a));
      dec.inv = n > 0 ? inverse(dec.m) : Matrix<RatFunc>();
      return dec;
    });
  }

  // u = sum_c b_{i,c} u_c with e'_{i,l} u_c = 0 for all l.
  std::map<Parts, UElement> i_decomposition(int i, const UElement& u) const {
    auto dec = decomposition(i, u.weight);
    std::map<Parts, UElement> out;
    if (u.coords.empty()) return out;
    Vec<RatFunc> x = dec->inv.apply(u.coords);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j].is_zero()) continue;
      auto& cand = dec->candidates[j];
      auto ker = kernel_basis(i, cand.rest);
      auto it = out.find(cand.c);
      if (it == out.end()) it = out.emplace(cand.c, zero(cand.rest)).first;
      it->second.coords = qbb::add(it->second.coords, qbb::scale((*ker)[cand.k], x[j]));
    }
    return out;
  }
  UElement recompose(int i, const RootVector& a, const std::map<Parts, UElement>& parts) const {
    UElement u = zero(a);
    for (auto& [c, v] : parts) u = add(u, mul(component_basis(i, c), v));
    return u;
  }

  // ---- Kashiwara operators

  // Effect of f~_{il} / e~_{il} on one index c of C_i: the new index and its coefficient.
  std::optional<std::pair<Parts, RatFunc>> kashiwara_step(Kash dir, int i, int l, const Parts& c) const {
    const Datum& d = datum();
    if (d.is_real(i) && l != 1) throw PreconditionViolated("real index " + d.name(i) + " has level 1 only");
    if (dir == Kash::f) {
      if (d.is_real(i)) return std::make_pair(Parts(c.size() + 1, 1), RatFunc(1));
      if (!d.is_isotropic(i)) {
        Parts n{l};
        n.insert(n.end(), c.begin(), c.end());
        return std::make_pair(n, RatFunc(1));
      }
      Parts n = c;
      n.insert(std::upper_bound(n.begin(), n.end(), l, std::greater<int>()), l);
      return std::make_pair(n, RatFunc(RadicalRational::sqrt_of(mpq_class(l, multiplicity(c, l) + 1))));
    }
    if (d.is_real(i)) {
      if (c.empty()) return std::nullopt;
      return std::make_pair(Parts(c.size() - 1, 1), RatFunc(1));
    }
    if (!d.is_isotropic(i)) {
      if (c.empty() || c[0] != l) return std::nullopt;
      return std::make_pair(Parts(c.begin() + 1, c.end()), RatFunc(1));
    }
    int m = multiplicity(c, l);
    if (m == 0) return std::nullopt;
    Parts n = c;
    n.erase(std::find(n.begin(), n.end(), l));
    return std::make_pair(n, RatFunc(RadicalRational::sqrt_of(mpq_class(m, l))));
  }

  std::shared_ptr<const Matrix<RatFunc>> kashiwara_matrix(Kash dir, int i, int l, const RootVector& a) const {
    return kashiwara_.get({static_cast<int>(dir), i, l, a}, [&] {
      RootVector t = dir == Kash::f ? a + datum().simple(i, l) : a - datum().simple(i, l);
      Matrix<RatFunc> out(dim(t), dim(a));
      if (out.rows() == 0 || out.cols() == 0) return out;
      auto src = decomposition(i, a), dst = decomposition(i, t);
      // S maps source candidates to target candidates.
      Matrix<RatFunc> s(dst->candidates.size(), src->candidates.size());
      for (std::size_t j = 0; j < src->candidates.size(); ++j) {
        auto& cand = src->candidates[j];
        auto step = kashiwara_step(dir, i, l, cand.c);
        if (!step) continue;
        s(dst->lookup.at({step->first, cand.k}), j) = step->second;
      }
      return dst->m * (s * src->inv);
    });
  }
  UElement kashiwara(Kash dir, int i, int l, const UElement& u) const {
    RootVector t = dir == Kash::f ? u.weight + datum().simple(i, l) : u.weight - datum().simple(i, l);
    return {t, kashiwara_matrix(dir, i, l, u.weight)->apply(u.coords)};
  }
  UElement ftilde(int i, int l, const UElement& u) const { return kashiwara(Kash::f, i, l, u); }
  UElement etilde(int i, int l, const UElement& u) const { return kashiwara(Kash::e, i, l, u); }

  // Letters (i,l) admissible when acting upward from weight a within the given height.
  std::vector<std::pair<int, int>> raising_letters(const RootVector& a, int max_height) const {
    std::vector<std::pair<int, int>> out;
    int room = max_height - height(a);
    for (std::size_t i = 0; i < datum().size(); ++i) {
      int top = datum().is_real(i) ? std::min(room, 1) : room;
      for (int l = 1; l <= top; ++l) out.emplace_back(static_cast<int>(i), l);
    }
    return out;
  }

 private:
  void same_weight(const UElement& a, const UElement& b) const {
    if (a.weight != b.weight) throw PreconditionViolated("weights differ: " + weight_str(datum(), a.weight) + " vs " + weight_str(datum(), b.weight));
  }

  Vec<RatFunc> column(const std::shared_ptr<const WeightSpace>& s, const Word& w) const {
    return s->expansion.column(s->index.at(w));
  }

  WeightSpace build_space(const RootVector& a) const {
    WeightSpace s;
    s.alpha = a;
    if (!nonnegative(a)) {
      s.expansion = Matrix<RatFunc>(0, 0);
      return s;
    }
    form_.check_height(a);
    s.words = words_of_weight(datum(), a);
    for (std::size_t k = 0; k < s.words.size(); ++k) s.index[s.words[k]] = k;
    Matrix<RatFunc> g = form_.gram(s.words, s.words);
    s.pivots = rref(g).pivots;
    std::size_t n = s.pivots.size();
    s.gram = Matrix<RatFunc>(n, n);
    Matrix<RatFunc> gpw(n, s.words.size());
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) s.gram(x, y) = g(s.pivots[x], s.pivots[y]);
      for (std::size_t w = 0; w < s.words.size(); ++w) gpw(x, w) = g(s.pivots[x], w);
    }
    if (n == 0) {
      s.expansion = Matrix<RatFunc>(0, s.words.size());
      return s;
    }
    auto e = solve(s.gram, gpw);
    if (!e) throw InternalError("pivot Gram matrix is singular at " + weight_str(datum(), a));
    s.expansion = std::move(*e);
    return s;
  }

  Primitive build_primitive(int i, int l) const {
    const Datum& d = datum();
    if (l < 1) throw PreconditionViolated("level must be positive");
    if (d.is_real(i) && l != 1) throw PreconditionViolated("real index " + d.name(i) + " has level 1 only");
    Primitive p;
    p.i = i;
    p.l = l;
    RootVector a = d.simple(i, l);
    FreeElement f = FreeElement::letter(i, l);
    if (d.is_isotropic(i)) {
      // b_il = f_il - sum over partitions other than (l) of b_{i,lambda} / prod_k m_k(lambda)!
      p.expansion = f;
      for (auto& lam : partitions(l)) {
        if (lam.size() == 1) continue;
        FreeElement prod = FreeElement::one();
        for (int part : lam) prod = prod * primitive(i, part)->expansion;
        long denom = 1;
        for (int k = 1; k <= l; ++k) denom *= factorial(multiplicity(lam, k));
        p.expansion -= RatFunc(mpq_class(1, denom)) * prod;
      }
    } else if (d.is_real(i) || l == 1) {
      p.expansion = f;
    } else {
      // Orthogonalize f_il against the images of words built from lower levels.
      std::vector<Word> lower;
      for (auto& w : words_of_weight(d, a))
        if (w.size() > 1) lower.push_back(w);
      auto s = space(a);
      std::vector<Vec<RatFunc>> cols;
      for (auto& w : lower) cols.push_back(column(s, w));
      Matrix<RatFunc> t = Matrix<RatFunc>::from_columns(cols, s->dim());
      Matrix<RatFunc> tg = t.transpose() * s->gram;
      Vec<RatFunc> rhs = tg.apply(column(s, Word{{i, l}}));
      auto y = solve(tg * t, rhs);
      if (!y) throw InternalError("primitive generator system inconsistent");
      p.expansion = f;
      for (std::size_t k = 0; k < lower.size(); ++k) p.expansion.add(lower[k], -(*y)[k]);
    }
    p.element = reduce(a, p.expansion);
    p.tau = pair(p.element, p.element);
    return p;
  }

  LusztigForm form_;
  KeyedCache<RootVector, WeightSpace> spaces_;
  KeyedCache<std::pair<int, int>, Primitive> primitives_;
  KeyedCache<std::tuple<int, int, int, RootVector>, Matrix<RatFunc>> derivations_;
  KeyedCache<std::pair<int, RootVector>, std::vector<Vec<RatFunc>>> kernels_;
  KeyedCache<std::pair<int, RootVector>, Decomposition> decompositions_;
  KeyedCache<std::tuple<int, int, int, RootVector>, Matrix<RatFunc>> kashiwara_;
};

}  // namespace qbb
