#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qbb/suite.hpp"
#include "qbb/uminus.hpp"

namespace qbb {

namespace detail {

inline std::string at_basis(const Datum& d, const RootVector& a, std::size_t k) {
  return "basis vector " + std::to_string(k) + " at weight " + weight_str(d, a);
}
inline std::string letter_str(const Datum& d, int i, int l) { return "(" + d.name(i) + "," + std::to_string(l) + ")"; }

// Calls fn(a, k, u) for every basis vector u of every weight of height <= h.
template <class Fn>
void for_each_basis(const UMinus& u, int h, Fn&& fn) {
  for (auto& a : weights_up_to(u.datum(), h))
    for (std::size_t k = 0; k < u.dim(a); ++k)
      if (!fn(a, k, u.basis(a, k))) return;
}

inline UElement power(const UMinus& u, const UElement& x, int n) {
  UElement out = u.one();
  for (int k = 0; k < n; ++k) out = u.mul(out, x);
  return out;
}

inline UElement eprime_power(const UMinus& u, int i, int n, UElement v) {
  for (int k = 0; k < n; ++k) v = u.eprime(i, 1, v);
  return v;
}

inline RatFunc qi_pow(const Datum& d, int i, int e) { return RatFunc::q_pow(d.qi_exp(i) * e); }

}  // namespace detail

// The coproduct formula on b_{i,c} and the twisted Leibniz rules for e' and delta.
inline SuiteResult suite_delta_product(const UMinus& u, int h) {
  SuiteResult r{"delta-product"};
  const Datum& d = u.datum();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const int qp = d.qparen_exp(i);
    for (int s = 1; s <= h; ++s)
      for (auto& c : d.is_real(i) ? std::vector<Parts>{Parts(s, 1)} : compositions(s)) {
        UElement bc = u.b_parts(i, c);
        for (int l = 1; l <= u.max_level(i, bc.weight); ++l) {
          UElement want = u.zero(bc.weight - d.simple(i, l));
          int before = 0;
          for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == l) {
              Parts rest = c;
              rest.erase(rest.begin() + k);
              want = u.add(want, u.scale(u.b_parts(i, rest), RatFunc::q_pow(-2 * l * before * qp)));
            }
            before += c[k];
          }
          if (!r.check(u.eprime(i, l, bc) == want, [&] {
                return "e'" + detail::letter_str(d, i, l) + " on b_{i,c} with c = " + parts_str(c);
              }))
            return r;
        }
      }
  }
  for (auto& x_w : weights_up_to(d, h))
    for (auto& y_w : weights_up_to(d, h - height(x_w))) {
      RootVector a = x_w + y_w;
      if (height(a) == 0) continue;
      for (std::size_t p = 0; p < u.dim(x_w); ++p)
        for (std::size_t s = 0; s < u.dim(y_w); ++s) {
          UElement x = u.basis(x_w, p), y = u.basis(y_w, s), xy = u.mul(x, y);
          for (std::size_t i = 0; i < d.size(); ++i)
            for (int l = 1; l <= u.max_level(i, a); ++l) {
              UElement left = u.add(u.mul(u.eprime(i, l, x), y),
                                    u.scale(u.mul(x, u.eprime(i, l, y)), RatFunc::q_pow(-l * d.pair_simple(i, x_w))));
              UElement right = u.add(u.scale(u.mul(u.derive(Deriv::delta, i, l, x), y), RatFunc::q_pow(-l * d.pair_simple(i, y_w))),
                                     u.mul(x, u.derive(Deriv::delta, i, l, y)));
              auto where = [&] {
                return detail::letter_str(d, i, l) + " on x = " + detail::at_basis(d, x_w, p) + ", y = " +
                       detail::at_basis(d, y_w, s);
              };
              if (!r.check(u.eprime(i, l, xy) == left, [&] { return "Leibniz rule for e' " + where(); })) return r;
              if (!r.check(u.derive(Deriv::delta, i, l, xy) == right, [&] { return "Leibniz rule for delta " + where(); }))
                return r;
            }
        }
    }
  return r;
}

// Defining relations of the quantum boson algebra, as operators on U^-.
inline SuiteResult suite_boson_relations(const UMinus& u, int h) {
  SuiteResult r{"boson-relations"};
  const Datum& d = u.datum();
  const int n = static_cast<int>(d.size());
  // e'_{il} b_{jk} = delta + q_i^{-kl a_ij} b_{jk} e'_{il}, and the e'' analogue.
  bool ok = true;
  detail::for_each_basis(u, h - 1, [&](const RootVector& a, std::size_t idx, const UElement& v) {
    for (int j = 0; j < n; ++j) {
      int ktop = d.is_real(j) ? 1 : h - height(a);
      for (int k = 1; k <= ktop; ++k) {
        UElement bv = u.mul(u.b(j, k), v);
        for (int i = 0; i < n; ++i)
          for (int l = 1; l <= u.max_level(i, bv.weight); ++l) {
            UElement lhs = u.eprime(i, l, bv);
            UElement rhs = u.scale(u.mul(u.b(j, k), u.eprime(i, l, v)), RatFunc::q_pow(-k * l * d.pair(i, j)));
            if (i == j && k == l) rhs = u.add(rhs, v);
            if (!r.check(lhs == rhs, [&] {
                  return "e'" + detail::letter_str(d, i, l) + " b" + detail::letter_str(d, j, k) + " on " + detail::at_basis(d, a, idx);
                }))
              return ok = false;
            UElement lhs2 = u.derive(Deriv::edoubleprime, i, l, bv);
            UElement rhs2 = u.scale(u.mul(u.b(j, k), u.derive(Deriv::edoubleprime, i, l, v)), RatFunc::q_pow(k * l * d.pair(i, j)));
            if (i == j && k == l) rhs2 = u.add(rhs2, v);
            if (!r.check(lhs2 == rhs2, [&] {
                  return "e''" + detail::letter_str(d, i, l) + " b" + detail::letter_str(d, j, k) + " on " + detail::at_basis(d, a, idx);
                }))
              return ok = false;
          }
      }
    }
    return true;
  });
  if (!ok) return r;
  // Serre relations for real i, in b and in e'.
  for (int i = 0; i < n; ++i) {
    if (!d.is_real(i)) continue;
    for (int j = 0; j < n; ++j) {
      int ltop = d.is_real(j) ? 1 : h;
      for (int l = 1; l <= ltop; ++l) {
        if (i == j) continue;
        const int m = 1 - l * d.a(i, j);
        RootVector top = d.simple(i, m) + d.simple(j, l);
        if (height(top) <= h) {
          UElement s = u.zero(top);
          for (int t = 0; t <= m; ++t) {
            UElement term = u.mul(u.mul(detail::power(u, u.b(i), m - t), u.b(j, l)), detail::power(u, u.b(i), t));
            RatFunc c = RatFunc(qbinom(m, t, d.qi_exp(i))) * RatFunc(t % 2 ? -1 : 1);
            s = u.add(s, u.scale(term, c));
          }
          if (!r.check(s.is_zero(), [&] { return "b-Serre relation for i = " + d.name(i) + ", " + detail::letter_str(d, j, l); }))
            return r;
        }
        ok = true;
        detail::for_each_basis(u, h, [&](const RootVector& a, std::size_t idx, const UElement& v) {
          if (!nonnegative(a - top)) return true;
          UElement s = u.zero(a - top);
          for (int t = 0; t <= m; ++t) {
            UElement x = detail::eprime_power(u, i, m - t, u.eprime(j, l, detail::eprime_power(u, i, t, v)));
            s = u.add(s, u.scale(x, RatFunc(qbinom(m, t, d.qi_exp(i))) * RatFunc(t % 2 ? -1 : 1)));
          }
          if (!r.check(s.is_zero(), [&] {
                return "e'-Serre relation for i = " + d.name(i) + ", " + detail::letter_str(d, j, l) + " on " + detail::at_basis(d, a, idx);
              }))
            return ok = false;
          return true;
        });
        if (!ok) return r;
      }
    }
  }
  // Commutation when a_ij = 0.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (d.a(i, j) != 0) continue;
      for (int k = 1; k <= (d.is_real(i) ? 1 : h); ++k)
        for (int l = 1; k + l <= h && (l == 1 || !d.is_real(j)); ++l) {
          if (!r.check(u.mul(u.b(i, k), u.b(j, l)) == u.mul(u.b(j, l), u.b(i, k)),
                       [&] { return "b" + detail::letter_str(d, i, k) + " and b" + detail::letter_str(d, j, l) + " do not commute"; }))
            return r;
          ok = true;
          detail::for_each_basis(u, h, [&](const RootVector& a, std::size_t idx, const UElement& v) {
            if (!nonnegative(a - d.simple(i, k) - d.simple(j, l))) return true;
            UElement x = u.eprime(i, k, u.eprime(j, l, v)), y = u.eprime(j, l, u.eprime(i, k, v));
            if (!r.check(x == y, [&] {
                  return "e'" + detail::letter_str(d, i, k) + " and e'" + detail::letter_str(d, j, l) + " do not commute on " +
                         detail::at_basis(d, a, idx);
                }))
              return ok = false;
            return true;
          });
          if (!ok) return r;
        }
    }
  return r;
}

// e'_{i,l} e''_{j,k} = q_i^{kl a_ij} e''_{j,k} e'_{i,l}
inline SuiteResult suite_eprime_edoubleprime(const UMinus& u, int h) {
  SuiteResult r{"eprime-edoubleprime-commutation"};
  const Datum& d = u.datum();
  detail::for_each_basis(u, h, [&](const RootVector& a, std::size_t idx, const UElement& v) {
    for (std::size_t i = 0; i < d.size(); ++i)
      for (int l = 1; l <= u.max_level(i, a); ++l)
        for (std::size_t j = 0; j < d.size(); ++j)
          for (int k = 1; k <= u.max_level(j, a); ++k) {
            if (!nonnegative(a - d.simple(i, l) - d.simple(j, k))) continue;
            UElement x = u.eprime(i, l, u.derive(Deriv::edoubleprime, j, k, v));
            UElement y = u.scale(u.derive(Deriv::edoubleprime, j, k, u.eprime(i, l, v)), RatFunc::q_pow(k * l * d.pair(i, j)));
            if (!r.check(x == y, [&] {
                  return "e'" + detail::letter_str(d, i, l) + " e''" + detail::letter_str(d, j, k) + " on " + detail::at_basis(d, a, idx);
                }))
              return false;
          }
    return true;
  });
  return r;
}

// (P b_il, Q) = tau_il (P, delta_{i,l} Q) and (b_il P, Q) = tau_il (P, e'_{i,l} Q).
inline SuiteResult suite_adjunction(const UMinus& u, int h) {
  SuiteResult r{"adjunction-L1"};
  const Datum& d = u.datum();
  for (auto& beta : weights_up_to(d, h))
    for (std::size_t i = 0; i < d.size(); ++i) {
      int ltop = d.is_real(i) ? std::min(1, h - height(beta)) : h - height(beta);
      for (int l = 1; l <= ltop; ++l) {
        RootVector top = beta + d.simple(i, l);
        const UElement& b = u.b(i, l);
        for (std::size_t p = 0; p < u.dim(beta); ++p)
          for (std::size_t s = 0; s < u.dim(top); ++s) {
            UElement P = u.basis(beta, p), Q = u.basis(top, s);
            auto where = [&] {
              return detail::letter_str(d, i, l) + ", P = " + detail::at_basis(d, beta, p) + ", Q = " + detail::at_basis(d, top, s);
            };
            if (!r.check(u.pair(u.mul(P, b), Q) == u.tau(i, l) * u.pair(P, u.derive(Deriv::delta, i, l, Q)),
                         [&] { return "right adjunction " + where(); }))
              return r;
            if (!r.check(u.pair(u.mul(b, P), Q) == u.tau(i, l) * u.pair(P, u.eprime(i, l, Q)),
                         [&] { return "left adjunction " + where(); }))
              return r;
          }
      }
    }
  return r;
}

inline SuiteResult suite_star_isometry(const UMinus& u, int h) {
  SuiteResult r{"star-isometry-L2"};
  const Datum& d = u.datum();
  for (auto& a : weights_up_to(d, h))
    for (std::size_t p = 0; p < u.dim(a); ++p) {
      UElement P = u.basis(a, p), Ps = u.star(P);
      if (!r.check(u.star(Ps) == P, [&] { return "star is not an involution on " + detail::at_basis(d, a, p); })) return r;
      for (std::size_t s = 0; s < u.dim(a); ++s) {
        UElement Q = u.basis(a, s);
        if (!r.check(u.pair(Ps, u.star(Q)) == u.pair(P, Q), [&] {
              return "(P*,Q*) != (P,Q) for P = " + detail::at_basis(d, a, p) + ", Q = " + detail::at_basis(d, a, s);
            }))
          return r;
      }
    }
  for (std::size_t i = 0; i < d.size(); ++i)
    for (int l = 1; l <= (d.is_real(i) ? std::min(h, 1) : h); ++l)
      if (!r.check(u.star(u.b(i, l)) == u.b(i, l), [&] { return "b" + detail::letter_str(d, i, l) + " is not star-fixed"; }))
        return r;
  return r;
}

// e'^n_i b_i^{(m)} = sum_k q_i^{-2nm+(m+n)k-k(k-1)/2} [n,k]_i b_i^{(m-k)} e'^{n-k}_i
inline SuiteResult suite_divided_power_eprime(const UMinus& u, int h) {
  SuiteResult r{"divided-power-eprime"};
  const Datum& d = u.datum();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d.is_real(i)) continue;
    for (int m = 0; m <= h; ++m) {
      UElement bm = u.divided_power(i, m);
      for (auto& a : weights_up_to(d, h - m))
        for (std::size_t idx = 0; idx < u.dim(a); ++idx) {
          UElement v = u.basis(a, idx), x = u.mul(bm, v);
          for (int n = 0; n <= x.weight[i]; ++n) {
            UElement lhs = detail::eprime_power(u, i, n, x);
            UElement rhs = u.zero(lhs.weight);
            for (int k = 0; k <= std::min(n, m); ++k) {
              UElement ev = detail::eprime_power(u, i, n - k, v);
              if (!nonnegative(ev.weight)) continue;
              RatFunc c = detail::qi_pow(d, i, -2 * n * m + (m + n) * k - k * (k - 1) / 2) * RatFunc(qbinom(n, k, d.qi_exp(i)));
              rhs = u.add(rhs, u.scale(u.mul(u.divided_power(i, m - k), ev), c));
            }
            if (!r.check(lhs == rhs, [&] {
                  return "n = " + std::to_string(n) + ", m = " + std::to_string(m) + " on " + detail::at_basis(d, a, idx);
                }))
              return r;
          }
        }
    }
  }
  return r;
}

// The projector P = sum_n (-1)^n q_i^{-n(n-1)/2} b_i^{(n)} e'^n_i for real i.
inline SuiteResult suite_projector(const UMinus& u, int h) {
  SuiteResult r{"projector-p"};
  const Datum& d = u.datum();
  for (std::size_t ii = 0; ii < d.size(); ++ii) {
    const int i = static_cast<int>(ii);
    if (!d.is_real(i)) continue;
    auto proj = [&](const UElement& v) {
      UElement out = u.zero(v.weight);
      if (!nonnegative(v.weight)) return out;
      for (int n = 0; n <= v.weight[i]; ++n) {
        RatFunc c = detail::qi_pow(d, i, -n * (n - 1) / 2) * RatFunc(n % 2 ? -1 : 1);
        out = u.add(out, u.scale(u.mul(u.divided_power(i, n), detail::eprime_power(u, i, n, v)), c));
      }
      return out;
    };
    bool ok = true;
    detail::for_each_basis(u, h, [&](const RootVector& a, std::size_t idx, const UElement& v) {
      auto where = [&] { return " for i = " + d.name(i) + " on " + detail::at_basis(d, a, idx); };
      UElement pv = proj(v);
      if (!r.check(u.eprime(i, 1, pv).is_zero(), [&] { return "e'_i P != 0" + where(); })) return ok = false;
      if (height(a) < h && !r.check(proj(u.mul(u.b(i), v)).is_zero(), [&] { return "P b_i != 0" + where(); }))
        return ok = false;
      UElement sum = u.zero(a);
      auto parts = u.i_decomposition(i, v);
      for (int n = 0; n <= a[i]; ++n) {
        UElement pe = proj(detail::eprime_power(u, i, n, v));
        sum = u.add(sum, u.scale(u.mul(u.divided_power(i, n), pe), detail::qi_pow(d, i, n * (n - 1) / 2)));
        auto it = parts.find(Parts(n, 1));
        UElement un = it == parts.end() ? u.zero(a - d.simple(i, n)) : it->second;
        if (!r.check(pe == u.scale(un, detail::qi_pow(d, i, -n * (n - 1) / 2)),
                     [&] { return "P e'^" + std::to_string(n) + " u != q_i^{-n(n-1)/2} u_n" + where(); }))
          return ok = false;
      }
      if (!r.check(sum == v, [&] { return "sum q_i^{n(n-1)/2} b^{(n)} P e'^n != 1" + where(); })) return ok = false;
      return true;
    });
    if (!ok) return r;
  }
  return r;
}

using UMinusSuite = std::function<SuiteResult(const UMinus&, int)>;

inline const std::vector<std::pair<std::string, UMinusSuite>>& uminus_suites() {
  static const std::vector<std::pair<std::string, UMinusSuite>> suites = {
      {"delta-product", suite_delta_product},
      {"boson-relations", suite_boson_relations},
      {"eprime-edoubleprime-commutation", suite_eprime_edoubleprime},
      {"adjunction-L1", suite_adjunction},
      {"star-isometry-L2", suite_star_isometry},
      {"divided-power-eprime", suite_divided_power_eprime},
      {"projector-p", suite_projector},
  };
  return suites;
}

}  // namespace qbb
