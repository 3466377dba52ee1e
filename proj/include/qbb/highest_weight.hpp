#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qbb/suite.hpp"
#include "qbb/uminus.hpp"

namespace qbb {

inline std::string lambda_str(const Datum& d, const DominantWeight& l) {
  std::string s;
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + d.name(i) + "=" + std::to_string(l[i]);
  return s;
}

// V(lambda)_{lambda-alpha} as a quotient of U^-_{-alpha}. The basis is a set of pivot words
// of U^- (applied to v_lambda) that is independent modulo the defining left ideal.
struct VSpace {
  RootVector alpha;
  std::vector<std::size_t> basis;  // positions in the U^- pivot basis
  Matrix<RatFunc> proj;            // dim V x dim U
  std::size_t ideal_rank = 0;
  std::size_t dim() const { return basis.size(); }
};

struct VElement {
  RootVector weight;
  Vec<RatFunc> coords;
  bool is_zero() const { return is_zero_vec(coords); }
  friend bool operator==(const VElement& a, const VElement& b) = default;
};

class VModule {
 public:
  VModule(const UMinus& u, DominantWeight lambda) : u_(u), lambda_(std::move(lambda)) {
    if (lambda_.size() != u.datum().size()) throw PreconditionViolated("lambda has the wrong number of entries");
    for (int x : lambda_)
      if (x < 0) throw PreconditionViolated("lambda is not dominant");
  }
  VModule(const VModule&) = delete;
  VModule& operator=(const VModule&) = delete;

  const UMinus& uminus() const { return u_; }
  const Datum& datum() const { return u_.datum(); }
  const DominantWeight& lambda() const { return lambda_; }

  // <h_i, lambda - alpha>
  int hweight(int i, const RootVector& a) const { return lambda_[i] - datum().hpair(i, a); }

  std::shared_ptr<const VSpace> space(const RootVector& a) const {
    return spaces_.get(a, [&] { return build_space(a); });
  }
  std::size_t dim(const RootVector& a) const { return space(a)->dim(); }

  VElement zero(const RootVector& a) const { return {a, Vec<RatFunc>(dim(a))}; }
  VElement basis(const RootVector& a, std::size_t k) const {
    VElement v = zero(a);
    v.coords.at(k) = RatFunc(1);
    return v;
  }
  VElement highest() const { return project(u_.one()); }

  VElement project(const UElement& x) const {
    auto s = space(x.weight);
    if (s->dim() == 0) return {x.weight, {}};
    return {x.weight, s->proj.apply(x.coords)};
  }
  UElement lift(const VElement& v) const {
    auto s = space(v.weight);
    UElement x = u_.zero(v.weight);
    for (std::size_t k = 0; k < s->dim(); ++k) x.coords[s->basis[k]] = v.coords[k];
    return x;
  }
  VElement act(const UElement& x, const VElement& v) const { return project(u_.mul(x, lift(v))); }

  VElement add(VElement a, const VElement& b) const {
    a.coords = qbb::add(a.coords, b.coords);
    return a;
  }
  VElement scale(VElement a, const RatFunc& s) const {
    a.coords = qbb::scale(a.coords, s);
    return a;
  }

  // a_{il}(P v_lambda) = tau_il (K-twisted delta_{i,l}(P) - K-twisted e'_{i,l}(P)) v_lambda
  std::shared_ptr<const Matrix<RatFunc>> raising_matrix(int i, int l, const RootVector& a) const {
    return raising_.get({i, l, a}, [&] {
      const Datum& d = datum();
      RootVector t = a - d.simple(i, l);
      auto s = space(a);
      Matrix<RatFunc> m(nonnegative(t) ? dim(t) : 0, s->dim());
      if (m.rows() == 0 || m.cols() == 0) return m;
      RatFunc kd = RatFunc::q_pow(d.qi_exp(i) * l * lambda_[i]);
      RatFunc ke = RatFunc::q_pow(-d.qi_exp(i) * l * hweight(i, t));
      const RatFunc& tau = u_.tau(i, l);
      for (std::size_t k = 0; k < s->dim(); ++k) {
        UElement p = u_.basis(a, s->basis[k]);
        UElement w = u_.sub(u_.scale(u_.derive(Deriv::delta, i, l, p), kd), u_.scale(u_.eprime(i, l, p), ke));
        VElement v = project(u_.scale(w, tau));
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, k) = v.coords[r];
      }
      return m;
    });
  }
  VElement raise(int i, int l, const VElement& v) const {
    RootVector t = v.weight - datum().simple(i, l);
    return {t, raising_matrix(i, l, v.weight)->apply(v.coords)};
  }

  // Gram matrix of the contravariant form on the basis of V(lambda)_{lambda-alpha}.
  std::shared_ptr<const Matrix<RatFunc>> gram(const RootVector& a) const {
    return grams_.get(a, [&] { return build_gram(a); });
  }
  RatFunc form(const VElement& x, const VElement& y) const {
    if (x.weight != y.weight || x.coords.empty()) return RatFunc();
    return dot(x.coords, *gram(x.weight), y.coords);
  }

  // ---- i-decomposition and Kashiwara operators on V(lambda)

  std::shared_ptr<const std::vector<Vec<RatFunc>>> kernel_basis(int i, const RootVector& a) const {
    return kernels_.get({i, a}, [&] {
      std::size_t n = dim(a);
      std::vector<Matrix<RatFunc>> blocks;
      std::size_t rows = 0;
      for (int l = 1; l <= u_.max_level(i, a); ++l) {
        blocks.push_back(*raising_matrix(i, l, a));
        rows += blocks.back().rows();
      }
      Matrix<RatFunc> st(rows, n);
      std::size_t r0 = 0;
      for (auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
          for (std::size_t c = 0; c < n; ++c) st(r0 + r, c) = b(r, c);
        r0 += b.rows();
      }
      return kernel(st);
    });
  }

  // Terms b_{i,c} v_c that vanish for weight reasons are left out, which makes the
  // decomposition unique: for imaginary i those with (mu + |c| alpha_i, alpha_i) = 0,
  // for real i those with n > <h_i, weight of v_n>.
  bool omitted(int i, const Parts& c, const RootVector& rest) const {
    if (c.empty()) return false;
    const Datum& d = datum();
    if (d.is_real(i)) return static_cast<int>(c.size()) > hweight(i, rest);
    return d.r(i) * hweight(i, rest) == 0;
  }

  std::shared_ptr<const Decomposition> decomposition(int i, const RootVector& a) const {
    return decompositions_.get({i, a}, [&] {
      Decomposition dec;
      std::vector<Vec<RatFunc>> cols;
      for (int s = 0; s <= a[i]; ++s) {
        RootVector rest = a - datum().simple(i, s);
        auto ker = kernel_basis(i, rest);
        for (auto& c : u_.component_parts(i, s)) {
          if (omitted(i, c, rest)) continue;
          UElement bc = u_.component_basis(i, c);
          for (std::size_t k = 0; k < ker->size(); ++k) {
            dec.lookup[{c, k}] = dec.candidates.size();
            dec.candidates.push_back({c, rest, k});
            cols.push_back(act(bc, VElement{rest, (*ker)[k]}).coords);
          }
        }
      }
      std::size_t n = dim(a);
      if (cols.size() != n)
        throw InternalError("V(lambda) i-decomposition at " + weight_str(datum(), a) + " has " + std::to_string(cols.size()) +
                            " candidates for dimension " + std::to_string(n));
      dec.m = Matrix<RatFunc>::from_columns(cols, n);
      if (n > 0 && rank(dec.m) != n) throw InternalError("singular V(lambda) i-decomposition at " + weight_str(datum(), a));
      dec.inv = n > 0 ? inverse(dec.m) : Matrix<RatFunc>();
      return dec;
    });
  }

  std::map<Parts, VElement> i_decomposition(int i, const VElement& v) const {
    auto dec = decomposition(i, v.weight);
    std::map<Parts, VElement> out;
    if (v.coords.empty()) return out;
    Vec<RatFunc> x = dec->inv.apply(v.coords);
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

  std::shared_ptr<const Matrix<RatFunc>> kashiwara_matrix(Kash dir, int i, int l, const RootVector& a) const {
    return kashiwara_.get({static_cast<int>(dir), i, l, a}, [&] {
      RootVector t = dir == Kash::f ? a + datum().simple(i, l) : a - datum().simple(i, l);
      Matrix<RatFunc> out(nonnegative(t) ? dim(t) : 0, dim(a));
      if (out.rows() == 0 || out.cols() == 0) return out;
      auto src = decomposition(i, a), dst = decomposition(i, t);
      Matrix<RatFunc> s(dst->candidates.size(), src->candidates.size());
      for (std::size_t j = 0; j < src->candidates.size(); ++j) {
        auto& cand = src->candidates[j];
        auto step = u_.kashiwara_step(dir, i, l, cand.c);
        if (!step) continue;
        auto it = dst->lookup.find({step->first, cand.k});
        if (it == dst->lookup.end()) {
          if (!omitted(i, step->first, cand.rest)) throw InternalError("missing V(lambda) decomposition candidate");
          continue;  // the term is zero
        }
        s(it->second, j) = step->second;
      }
      return dst->m * (s * src->inv);
    });
  }
  VElement kashiwara(Kash dir, int i, int l, const VElement& v) const {
    RootVector t = dir == Kash::f ? v.weight + datum().simple(i, l) : v.weight - datum().simple(i, l);
    return {t, kashiwara_matrix(dir, i, l, v.weight)->apply(v.coords)};
  }
  VElement ftilde(int i, int l, const VElement& v) const { return kashiwara(Kash::f, i, l, v); }
  VElement etilde(int i, int l, const VElement& v) const { return kashiwara(Kash::e, i, l, v); }

 private:
  VSpace build_space(const RootVector& a) const {
    const Datum& d = datum();
    VSpace s;
    s.alpha = a;
    if (!nonnegative(a)) return s;
    std::size_t n = u_.dim(a);
    std::vector<Vec<RatFunc>> cols;
    auto add_generator = [&](const RootVector& gw, const UElement& g) {
      RootVector rest = a - gw;
      if (!nonnegative(rest)) return;
      for (std::size_t k = 0; k < u_.dim(rest); ++k) cols.push_back(u_.mul(u_.basis(rest, k), g).coords);
    };
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.is_real(i)) {
        int p = lambda_[i] + 1;
        if (p > a[i]) continue;
        UElement g = u_.one();
        for (int k = 0; k < p; ++k) g = u_.mul(g, u_.b(i));
        add_generator(d.simple(i, p), g);
      } else if (lambda_[i] == 0) {
        for (int l = 1; l <= a[i]; ++l) add_generator(d.simple(i, l), u_.reduce(d.simple(i, l), FreeElement::letter(i, l)));
      }
    }
    std::size_t m = cols.size();
    for (std::size_t k = 0; k < n; ++k) {
      Vec<RatFunc> e(n);
      e[k] = RatFunc(1);
      cols.push_back(std::move(e));
    }
    auto ech = rref(Matrix<RatFunc>::from_columns(cols, n));
    std::vector<std::size_t> ideal;
    for (auto p : ech.pivots) {
      if (p < m)
        ideal.push_back(p);
      else
        s.basis.push_back(p - m);
    }
    s.ideal_rank = ideal.size();
    if (s.basis.empty()) {
      s.proj = Matrix<RatFunc>(0, n);
      return s;
    }
    std::vector<Vec<RatFunc>> square;
    for (auto p : ideal) square.push_back(cols[p]);
    for (auto b : s.basis) square.push_back(cols[m + b]);
    Matrix<RatFunc> inv = inverse(Matrix<RatFunc>::from_columns(square, n));
    s.proj = Matrix<RatFunc>(s.basis.size(), n);
    for (std::size_t r = 0; r < s.basis.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) s.proj(r, c) = inv(ideal.size() + r, c);
    return s;
  }

  // Peel the first letter f_{jk} = sum_c beta_c b_{j,c} of each basis word and use
  // {b_jl y, v'} = -{y, K_j^l a_jl v'} (imaginary) or {b_j y, v'} = {y, K_j a_j v'}/(q_j^2-1) (real).
  Matrix<RatFunc> build_gram(const RootVector& a) const {
    const Datum& d = datum();
    auto s = space(a);
    std::size_t n = s->dim();
    Matrix<RatFunc> g(n, n);
    if (n == 0) return g;
    if (height(a) == 0) {
      g(0, 0) = RatFunc(1);
      return g;
    }
    auto us = u_.space(a);
    for (std::size_t k = 0; k < n; ++k) {
      const Word& w = us->pivot_word(s->basis[k]);
      const int j = w[0].index, top = w[0].level;
      RootVector tail_w = a - d.simple(j, top);
      UElement tail = u_.reduce(tail_w, FreeElement(Word(w.begin() + 1, w.end())));
      auto first = u_.i_decomposition(j, u_.reduce(d.simple(j, top), FreeElement::letter(j, top)));
      Vec<RatFunc> row(n);
      for (auto& [c, coeff] : first) {
        const RatFunc& beta = coeff.coords.at(0);
        const int l = c[0];
        Parts restc(c.begin() + 1, c.end());
        RootVector low = a - d.simple(j, l);
        VElement y = project(u_.mul(u_.component_basis(j, restc), tail));
        if (y.coords.empty() || y.is_zero()) continue;
        RatFunc kq = RatFunc::q_pow(d.qi_exp(j) * l * hweight(j, low));
        RatFunc factor = d.is_real(j) ? kq / (RatFunc::q_pow(2 * d.qi_exp(j)) - RatFunc(1)) : -kq;
        // row += beta * factor * y^T G(low) A_{j,l}
        Vec<RatFunc> yg = gram(low)->transpose().apply(y.coords);
        Vec<RatFunc> contrib = raising_matrix(j, l, a)->transpose().apply(yg);
        row = qbb::add(row, qbb::scale(contrib, beta * factor));
      }
      for (std::size_t c = 0; c < n; ++c) g(k, c) = row[c];
    }
    return g;
  }

  const UMinus& u_;
  DominantWeight lambda_;
  KeyedCache<RootVector, VSpace> spaces_;
  KeyedCache<std::tuple<int, int, RootVector>, Matrix<RatFunc>> raising_;
  KeyedCache<RootVector, Matrix<RatFunc>> grams_;
  KeyedCache<std::pair<int, RootVector>, std::vector<Vec<RatFunc>>> kernels_;
  KeyedCache<std::pair<int, RootVector>, Decomposition> decompositions_;
  KeyedCache<std::tuple<int, int, int, RootVector>, Matrix<RatFunc>> kashiwara_;
};

// {K_i q_i^n; m}_i acting on v_lambda, computed from its product definition.
inline RatFunc qbrace_on_highest(const Datum& d, int i, int lambda_i, int n, int m) {
  const int r = d.qi_exp(i);
  RatFunc k = RatFunc::q_pow(r * lambda_i);
  RatFunc kinv = RatFunc::q_pow(-r * lambda_i);
  RatFunc den = RatFunc::q_pow(r) - RatFunc::q_pow(-r);
  RatFunc v(1);
  for (int s = 1; s <= m; ++s) v *= (k * RatFunc::q_pow(r * (n + 1 - s)) - kinv * RatFunc::q_pow(-r * (n + 1 - s))) / den;
  return v / RatFunc(qfactorial(m, r));
}

inline SuiteResult suite_qbrace_action(const VModule& v, int h) {
  SuiteResult r{"qbrace-action"};
  const Datum& d = v.datum();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d.is_real(i)) continue;
    for (int n = -h; n <= h; ++n)
      for (int m = 0; m <= h; ++m) {
        RatFunc lhs = qbrace_on_highest(d, i, v.lambda()[i], n, m);
        RatFunc rhs(qbinom(v.lambda()[i] + n, m, d.qi_exp(i)));
        if (!r.check(lhs == rhs && lhs.is_laurent(), [&] {
              return "{K_i q_i^" + std::to_string(n) + "; " + std::to_string(m) + "} v_lambda = " + lhs.str() + " for i = " + d.name(i);
            }))
          return r;
      }
  }
  return r;
}

// u = sum_{k>=n} (-1)^{k-n} [k-1, k-n]_i b_i^{(k)} A_i^{(k)} u on V(lambda)_mu with n = -mu(h_i) >= 1.
inline SuiteResult suite_sl2_recovery(const VModule& v, int h) {
  SuiteResult r{"sl2-recovery"};
  const Datum& d = v.datum();
  const UMinus& u = v.uminus();
  for (std::size_t ii = 0; ii < d.size(); ++ii) {
    const int i = static_cast<int>(ii);
    if (!d.is_real(i)) continue;
    const int qi = d.qi_exp(i);
    RatFunc a_scale = (u.tau(i) * (RatFunc::q_pow(qi) - RatFunc::q_pow(-qi))).inverse();
    for (auto& a : weights_up_to(d, h)) {
      const int n = -v.hweight(i, a);
      if (n < 1) continue;
      for (std::size_t idx = 0; idx < v.dim(a); ++idx) {
        VElement x = v.basis(a, idx);
        VElement sum = v.zero(a);
        VElement ak = x;  // A_i^k x
        for (int k = 1; k <= a[i]; ++k) {
          ak = v.scale(v.raise(i, 1, ak), a_scale);
          if (k < n) continue;
          RatFunc c = RatFunc(qbinom(k - 1, k - n, qi)) / RatFunc(qfactorial(k, qi));
          if ((k - n) % 2) c = -c;
          sum = v.add(sum, v.scale(v.act(u.divided_power(i, k), ak), c));
        }
        if (!r.check(sum == x, [&] {
              return "basis vector " + std::to_string(idx) + " of V(" + lambda_str(d, v.lambda()) + ") at weight " + weight_str(d, a);
            }))
          return r;
      }
    }
  }
  return r;
}

}  // namespace qbb
