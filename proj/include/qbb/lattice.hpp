#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbb/matrix.hpp"

namespace qbb {

// Lattices at one weight are given by a list of basis columns in F(q)^n.
// A_0 = functions regular at q = 0, A_inf = regular at q = infinity, A = F[q, q^-1].
using Columns = std::vector<Vec<RatFunc>>;
using KVec = Vec<RadicalRational>;

inline Vec<RatFunc> bar_vec(const Vec<RatFunc>& v) {
  Vec<RatFunc> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].bar();
  return out;
}
inline Columns bar_cols(const Columns& c) {
  Columns out;
  for (auto& v : c) out.push_back(bar_vec(v));
  return out;
}

// Column reduction over the discrete valuation ring A_0: rows are visited in order, the
// pivot is the entry of minimal q-order (lowest column on ties) and is normalized to q^ord.
inline Columns dvr_reduce(Columns cols, std::size_t n) {
  Columns basis;
  std::vector<bool> active(cols.size(), true);
  for (std::size_t r = 0; r < n; ++r) {
    std::optional<std::size_t> p;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!active[j] || cols[j][r].is_zero()) continue;
      if (!p || cols[j][r].ord0() < cols[*p][r].ord0()) p = j;
    }
    if (!p) continue;
    RatFunc piv = cols[*p][r];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j == *p || !active[j] || cols[j][r].is_zero()) continue;
      cols[j] = sub(cols[j], scale(cols[*p], cols[j][r] / piv));
    }
    Vec<RatFunc> b = scale(cols[*p], RatFunc::q_pow(piv.ord0()) / piv);
    basis.push_back(std::move(b));
    active[*p] = false;
  }
  return basis;
}

namespace detail {

inline int span_of(const LaurentPoly& p) { return p.deg() - p.ord(); }

// a = Q b + R in F[q, q^-1] with span(R) < span(b)
inline std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  auto [quo, rem] = poly_divmod(a.shift(-a.ord()), b.shift(-b.ord()));
  return {quo.shift(a.ord() - b.ord()), rem.shift(a.ord())};
}

inline LaurentPoly poly_lcm(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly g = poly_gcd(a, b);
  return poly_divmod(a * b, g).first;
}

}  // namespace detail

namespace detail {

inline RatFunc determinant(Matrix<RatFunc> a) {
  const std::size_t k = a.rows();
  RatFunc det(1);
  for (std::size_t c = 0; c < k; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t r = c; r < k; ++r)
      if (!a(r, c).is_zero() && (!p || pivot_cost(a(r, c)) < pivot_cost(a(*p, c)))) p = r;
    if (!p) return RatFunc();
    if (*p != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a(c, j), a(*p, j));
      det = -det;
    }
    det *= a(c, c);
    RatFunc inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < k; ++r) {
      if (a(r, c).is_zero()) continue;
      RatFunc f = a(r, c) * inv;
      for (std::size_t j = c; j < k; ++j)
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

inline bool is_unit_of_a(const RatFunc& x) { return !x.is_zero() && x.is_laurent() && x.num().ord() == x.num().deg(); }

// Echelon reduction; also reports the pivot row of each basis vector.
inline Columns hermite(const Columns& gens, std::size_t n, std::vector<std::size_t>& pivot_rows);

}  // namespace detail

// A-basis of the A-span of gens. A subset of the generators is returned whenever one
// spans the same lattice, since those keep their small coefficients; otherwise the
// Hermite-style echelon basis.
inline Columns laurent_reduce(const Columns& gens, std::size_t n) {
  std::vector<std::size_t> rows;
  Columns h = detail::hermite(gens, n, rows);
  if (h.empty()) return h;
  Columns pick;
  std::vector<Vec<RatFunc>> reduced;  // echelon copies of the picked vectors
  std::vector<std::size_t> lead;
  for (auto& g : gens) {
    Vec<RatFunc> v = g;
    for (std::size_t t = 0; t < reduced.size(); ++t)
      if (!v[lead[t]].is_zero()) v = sub(v, scale(reduced[t], v[lead[t]] / reduced[t][lead[t]]));
    auto it = std::find_if(v.begin(), v.end(), [](const RatFunc& x) { return !x.is_zero(); });
    if (it == v.end()) continue;
    lead.push_back(static_cast<std::size_t>(it - v.begin()));
    reduced.push_back(std::move(v));
    pick.push_back(g);
    if (pick.size() == h.size()) break;
  }
  if (pick.size() != h.size()) return h;
  const std::size_t k = h.size();
  RatFunc dh(1);
  for (std::size_t t = 0; t < k; ++t) dh *= h[t][rows[t]];
  Matrix<RatFunc> pr(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) pr(a, b) = pick[b][rows[a]];
  RatFunc ratio = detail::determinant(pr) / dh;
  return detail::is_unit_of_a(ratio) ? pick : h;
}

inline Columns detail::hermite(const Columns& gens, std::size_t n, std::vector<std::size_t>& pivot_rows) {
  LaurentPoly den(1);
  for (auto& v : gens)
    for (auto& x : v)
      if (!x.is_zero() && !x.den().is_constant()) den = detail::poly_lcm(den, x.den());
  RatFunc dd(den);
  std::vector<std::vector<LaurentPoly>> cols;
  for (auto& v : gens) {
    std::vector<LaurentPoly> c(n);
    bool nz = false;
    for (std::size_t r = 0; r < n; ++r) {
      RatFunc y = v[r] * dd;
      if (!y.is_laurent()) throw InternalError("common denominator failed");
      c[r] = y.num().scaled(y.den().coeff(0).inverse());
      nz = nz || !c[r].is_zero();
    }
    if (nz) cols.push_back(std::move(c));
  }
  Columns basis;
  std::vector<bool> active(cols.size(), true);
  for (std::size_t r = 0; r < n; ++r) {
    while (true) {
      std::optional<std::size_t> p;
      std::size_t count = 0;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (!active[j] || cols[j][r].is_zero()) continue;
        ++count;
        if (!p || detail::span_of(cols[j][r]) < detail::span_of(cols[*p][r])) p = j;
      }
      if (!p) break;
      if (count == 1) {
        const LaurentPoly& pv = cols[*p][r];
        LaurentPoly unit = LaurentPoly::monomial(pv.trail().inverse(), -pv.ord());
        Vec<RatFunc> b(n);
        for (std::size_t k = 0; k < n; ++k) b[k] = RatFunc(cols[*p][k] * unit) / dd;
        basis.push_back(std::move(b));
        pivot_rows.push_back(r);
        active[*p] = false;
        break;
      }
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j == *p || !active[j] || cols[j][r].is_zero()) continue;
        LaurentPoly quo = detail::laurent_divmod(cols[j][r], cols[*p][r]).first;
        for (std::size_t k = 0; k < n; ++k)
          if (!cols[*p][k].is_zero()) cols[j][k] -= quo * cols[*p][k];
      }
    }
  }
  return basis;
}

// Basis of {c in A^k : a c = 0} for a matrix over F(q), by column reduction with a transform.
inline Columns laurent_kernel(const Matrix<RatFunc>& a) {
  const std::size_t r = a.rows(), k = a.cols();
  std::vector<std::vector<LaurentPoly>> cols(k, std::vector<LaurentPoly>(r + k));
  for (std::size_t i = 0; i < r; ++i) {
    LaurentPoly den(1);
    for (std::size_t j = 0; j < k; ++j)
      if (!a(i, j).is_zero() && !a(i, j).den().is_constant()) den = detail::poly_lcm(den, a(i, j).den());
    for (std::size_t j = 0; j < k; ++j) {
      RatFunc y = a(i, j) * RatFunc(den);
      cols[j][i] = y.is_zero() ? LaurentPoly() : y.num().scaled(y.den().coeff(0).inverse());
    }
  }
  for (std::size_t j = 0; j < k; ++j) cols[j][r + j] = LaurentPoly(1);
  std::vector<bool> active(k, true);
  for (std::size_t i = 0; i < r; ++i) {
    while (true) {
      std::optional<std::size_t> p;
      std::size_t count = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (!active[j] || cols[j][i].is_zero()) continue;
        ++count;
        if (!p || detail::span_of(cols[j][i]) < detail::span_of(cols[*p][i])) p = j;
      }
      if (!p) break;
      if (count == 1) {
        active[*p] = false;
        break;
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (j == *p || !active[j] || cols[j][i].is_zero()) continue;
        LaurentPoly quo = detail::laurent_divmod(cols[j][i], cols[*p][i]).first;
        for (std::size_t t = 0; t < r + k; ++t)
          if (!cols[*p][t].is_zero()) cols[j][t] -= quo * cols[*p][t];
      }
    }
  }
  Columns out;
  for (std::size_t j = 0; j < k; ++j) {
    if (!active[j]) continue;
    Vec<RatFunc> c(k);
    for (std::size_t t = 0; t < k; ++t) c[t] = RatFunc(cols[j][r + t]);
    out.push_back(std::move(c));
  }
  return out;
}

// M cap W for an A-lattice M (basis m) and the F(q)-span W of w, as an A-basis.
inline Columns intersect_span(const Columns& m, const Columns& w, std::size_t n) {
  if (m.empty()) return {};
  Matrix<RatFunc> bm = Matrix<RatFunc>::from_columns(m, n);
  Matrix<RatFunc> wt = w.empty() ? Matrix<RatFunc>(0, n) : Matrix<RatFunc>::from_columns(w, n).transpose();
  // rows annihilating W
  std::vector<Vec<RatFunc>> ann = w.empty() ? std::vector<Vec<RatFunc>>() : kernel(wt);
  if (w.empty())
    for (std::size_t t = 0; t < n; ++t) {
      Vec<RatFunc> e(n);
      e[t] = RatFunc(1);
      ann.push_back(std::move(e));
    }
  if (ann.empty()) return m;
  Matrix<RatFunc> p = Matrix<RatFunc>::from_columns(ann, n).transpose();
  Columns out;
  for (auto& c : laurent_kernel(p * bm)) out.push_back(bm.apply(c));
  return laurent_reduce(out, n);
}

inline std::optional<Vec<RatFunc>> coordinates(const Columns& basis, std::size_t n, const Vec<RatFunc>& x) {
  if (basis.empty()) {
    if (is_zero_vec(x)) return Vec<RatFunc>{};
    return std::nullopt;
  }
  return solve(Matrix<RatFunc>::from_columns(basis, n), x);
}

inline bool all_regular_at_zero(const Vec<RatFunc>& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.regular_at_zero(); });
}
inline bool all_regular_at_infinity(const Vec<RatFunc>& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.regular_at_infinity(); });
}
inline bool all_laurent(const Vec<RatFunc>& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.is_laurent(); });
}

inline bool in_a0_lattice(const Columns& basis, std::size_t n, const Vec<RatFunc>& x) {
  auto c = coordinates(basis, n, x);
  return c && all_regular_at_zero(*c);
}
inline bool in_a_lattice(const Columns& basis, std::size_t n, const Vec<RatFunc>& x) {
  auto c = coordinates(basis, n, x);
  return c && all_laurent(*c);
}
inline bool contains_a_lattice(const Columns& big, const Columns& small, std::size_t n) {
  return std::all_of(small.begin(), small.end(), [&](const Vec<RatFunc>& x) { return in_a_lattice(big, n, x); });
}
inline bool same_a_lattice(const Columns& x, const Columns& y, std::size_t n) {
  return x.size() == y.size() && contains_a_lattice(x, y, n) && contains_a_lattice(y, x, n);
}

// Class of x in L/qL in the coordinates of the lattice basis; nullopt when x is not in L.
inline std::optional<KVec> residue(const Columns& basis, std::size_t n, const Vec<RatFunc>& x) {
  auto c = coordinates(basis, n, x);
  if (!c || !all_regular_at_zero(*c)) return std::nullopt;
  KVec out(c->size());
  for (std::size_t k = 0; k < c->size(); ++k) out[k] = (*c)[k].value_at_zero();
  return out;
}

struct BalancedResult {
  bool certified = false;
  std::size_t rank = 0;
  Columns e_basis;            // F-basis of M cap L_0 cap L_inf
  std::vector<KVec> residues;  // their classes in L_0/qL_0
  std::string witness;
};

namespace detail {

// Coefficient rows expressing "sum_{j,e} c_{j,e} q^e t_j is regular at 0" for the entries of one row.
inline void regularity_rows(const std::vector<RatFunc>& t, const std::vector<std::pair<int, int>>& range,
                            const std::vector<std::size_t>& offset, std::size_t unknowns, std::vector<KVec>& rows) {
  int lowest = INT_MAX;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (!t[j].is_zero() && range[j].first <= range[j].second) lowest = std::min(lowest, range[j].first + t[j].ord0());
  if (lowest >= 0) return;
  for (int s = lowest; s < 0; ++s) {
    KVec row(unknowns);
    bool nz = false;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j].is_zero()) continue;
      for (int e = range[j].first; e <= range[j].second; ++e) {
        int need = s - e;
        if (need < t[j].ord0()) continue;
        RadicalRational c = t[j].series_at_zero(need, need)[0];
        if (c.is_zero()) continue;
        row[offset[j] + (e - range[j].first)] = c;
        nz = true;
      }
    }
    if (nz) rows.push_back(std::move(row));
  }
}

// Rows of a square invertible submatrix of a full column rank matrix.
inline std::vector<std::size_t> independent_rows(const Matrix<RatFunc>& t) { return rref(t.transpose()).pivots; }

}  // namespace detail

// E = M cap L_0 cap L_inf for an A-lattice M (basis m) inside the span of the A_0-lattice L_0
// and the A_inf-lattice L_inf; certified when E maps isomorphically onto (M cap L_0)/(M cap qL_0).
inline BalancedResult balanced_check(const Columns& m, const Columns& l0, const Columns& linf, std::size_t n) {
  BalancedResult out;
  const std::size_t k = m.size();
  out.rank = k;
  if (k == 0) {
    out.certified = true;
    return out;
  }
  Columns t0c, tic;
  for (std::size_t j = 0; j < k; ++j) {
    auto c0 = coordinates(l0, n, m[j]);
    auto ci = coordinates(linf, n, m[j]);
    if (!c0 || !ci) {
      out.witness = "M is not contained in the span of the lattices (generator " + std::to_string(j) + ")";
      return out;
    }
    t0c.push_back(std::move(*c0));
    tic.push_back(std::move(*ci));
  }
  Matrix<RatFunc> t0 = Matrix<RatFunc>::from_columns(t0c, l0.size());
  Matrix<RatFunc> ti = Matrix<RatFunc>::from_columns(tic, linf.size());
  auto bounds = [&](const Matrix<RatFunc>& t, bool at_zero) {
    auto rows = detail::independent_rows(t);
    if (rows.size() != k) throw InternalError("M basis is not independent");
    Matrix<RatFunc> s(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) s(a, b) = t(rows[a], b);
    Matrix<RatFunc> inv = inverse(s);
    std::vector<int> bound(k, at_zero ? INT_MAX : INT_MIN);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const RatFunc& x = inv(a, b);
        if (x.is_zero()) continue;
        bound[a] = at_zero ? std::min(bound[a], x.ord0()) : std::max(bound[a], x.deg_inf());
      }
    return bound;
  };
  auto lo = bounds(t0, true), hi = bounds(ti, false);
  std::vector<std::pair<int, int>> range(k);
  std::vector<std::size_t> offset(k);
  std::size_t unknowns = 0;
  for (std::size_t j = 0; j < k; ++j) {
    range[j] = {lo[j], hi[j]};
    offset[j] = unknowns;
    if (lo[j] <= hi[j]) unknowns += hi[j] - lo[j] + 1;
  }
  std::vector<KVec> rows;
  for (std::size_t r = 0; r < t0.rows(); ++r) detail::regularity_rows(t0.row(r), range, offset, unknowns, rows);
  // regular at infinity <=> bar is regular at zero; bar sends q^e to q^-e
  std::vector<std::pair<int, int>> neg(k);
  for (std::size_t j = 0; j < k; ++j) neg[j] = {-range[j].second, -range[j].first};
  for (std::size_t r = 0; r < ti.rows(); ++r) {
    std::vector<RatFunc> row = bar_vec(ti.row(r));
    std::vector<KVec> raw;
    detail::regularity_rows(row, neg, offset, unknowns, raw);
    // unknown (j, e) sits at slot offset + (e - lo); in the barred system exponent -e sits at -e - (-hi)
    for (auto& x : raw) {
      KVec fixed(unknowns);
      for (std::size_t j = 0; j < k; ++j) {
        if (range[j].first > range[j].second) continue;
        int w = range[j].second - range[j].first;
        for (int s = 0; s <= w; ++s) fixed[offset[j] + (w - s)] = x[offset[j] + s];
      }
      rows.push_back(std::move(fixed));
    }
  }
  std::vector<KVec> sol;
  if (unknowns > 0) {
    Matrix<RadicalRational> sys(rows.size(), unknowns);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < unknowns; ++b) sys(a, b) = rows[a][b];
    sol = rows.empty() ? std::vector<KVec>() : kernel(sys);
    if (rows.empty())
      for (std::size_t b = 0; b < unknowns; ++b) {
        KVec e(unknowns);
        e[b] = RadicalRational(1);
        sol.push_back(std::move(e));
      }
  }
  for (auto& s : sol) {
    Vec<RatFunc> c(k);
    for (std::size_t j = 0; j < k; ++j)
      for (int e = range[j].first; e <= range[j].second; ++e) {
        const RadicalRational& v = s[offset[j] + (e - range[j].first)];
        if (!v.is_zero()) c[j] += RatFunc(LaurentPoly::monomial(v, e));
      }
    Vec<RatFunc> x(n);
    for (std::size_t j = 0; j < k; ++j)
      if (!c[j].is_zero()) x = add(x, scale(m[j], c[j]));
    Vec<RatFunc> y = t0.apply(c);
    KVec res(y.size());
    for (std::size_t a = 0; a < y.size(); ++a) res[a] = y[a].value_at_zero();
    out.e_basis.push_back(std::move(x));
    out.residues.push_back(std::move(res));
  }
  std::size_t rres = 0;
  if (!out.residues.empty()) rres = rank(Matrix<RadicalRational>::from_columns(out.residues, l0.size()));
  if (rres < out.e_basis.size()) {
    out.witness = "a nonzero element of M cap L_0 cap L_inf lies in qL_0 (kernel of the residue map)";
    return out;
  }
  if (out.e_basis.size() < k) {
    out.witness = "M cap L_0 cap L_inf has dimension " + std::to_string(out.e_basis.size()) + " but M has rank " +
                  std::to_string(k) + " (cokernel of the residue map)";
    return out;
  }
  out.certified = true;
  return out;
}

}  // namespace qbb
