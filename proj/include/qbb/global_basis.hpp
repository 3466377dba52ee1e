#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qbb/crystal.hpp"

namespace qbb {

struct NoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A generator of the A-form: b_i^{(n)} for real i, b_{il} for imaginary i.
struct Chunk {
  int i, m;
};

inline std::vector<Chunk> chunks_into(const Datum& d, const RootVector& a) {
  std::vector<Chunk> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (int m = 1; m <= a[i]; ++m) out.push_back({static_cast<int>(i), m});
  return out;
}

inline UElement chunk_element(const UMinus& u, Chunk c) {
  return u.datum().is_real(c.i) ? u.divided_power(c.i, c.m) : u.b(c.i, c.m);
}

// U^-_A (or V(lambda)^A = U^-_A v_lambda) weight by weight.
class AForm {
 public:
  explicit AForm(const Ambient& a) : amb_(a) {}
  AForm(const AForm&) = delete;
  AForm& operator=(const AForm&) = delete;

  const Ambient& ambient() const { return amb_; }

  std::shared_ptr<const Columns> at(const RootVector& a) const {
    return cache_.get(a, [&] {
      std::size_t n = amb_.dim(a);
      if (n == 0) return Columns{};
      if (height(a) == 0) return Columns{amb_.highest()};
      Columns gens;
      for (auto c : chunks_into(amb_.datum(), a)) {
        RootVector rest = a - amb_.datum().simple(c.i, c.m);
        auto lower = at(rest);
        UElement x = chunk_element(amb_.uminus(), c);
        for (auto& y : *lower) gens.push_back(amb_.act(x, rest, y));
      }
      return laurent_reduce(gens, n);
    });
  }

  // x * A-form at weight a - |x|, as an A-basis of the sum of these products
  Columns product(const std::vector<std::pair<UElement, RootVector>>& parts, const RootVector& a) const {
    std::size_t n = amb_.dim(a);
    Columns gens;
    for (auto& [x, w] : parts) {
      RootVector rest = a - w;
      if (!nonnegative(rest)) continue;
      for (auto& y : *at(rest)) gens.push_back(amb_.act(x, rest, y));
    }
    return n == 0 ? Columns{} : laurent_reduce(gens, n);
  }

 private:
  const Ambient& amb_;
  KeyedCache<RootVector, Columns> cache_;
};

struct GlobalEntry {
  std::size_t vertex;
  Vec<RatFunc> g;
  bool bar_invariant = false, in_aform = false, residue_match = false;
};

struct GlobalWeight {
  RootVector alpha;
  BalancedResult balanced;
  std::vector<GlobalEntry> entries;
  bool unimodular = false;  // the G(b) form an A-basis of the A-form
};

// The element of E (an F-basis with independent residues) whose residue is r.
inline std::optional<Vec<RatFunc>> lift_residue(const BalancedResult& e, const KVec& r, std::size_t n) {
  if (e.residues.empty()) return std::nullopt;
  Matrix<RadicalRational> m = Matrix<RadicalRational>::from_columns(e.residues, r.size());
  auto y = solve(m, r);
  if (!y || rank(m) != e.residues.size()) return std::nullopt;
  Vec<RatFunc> out(n);
  for (std::size_t j = 0; j < y->size(); ++j)
    if (!(*y)[j].is_zero()) out = add(out, scale(e.e_basis[j], RatFunc((*y)[j])));
  return out;
}

class GlobalBasis {
 public:
  explicit GlobalBasis(const Crystal& c) : crystal_(c), aform_(c.ambient()) {}
  GlobalBasis(const GlobalBasis&) = delete;
  GlobalBasis& operator=(const GlobalBasis&) = delete;

  const Crystal& crystal() const { return crystal_; }
  const AForm& aform() const { return aform_; }
  const Ambient& ambient() const { return crystal_.ambient(); }

  // Throws NoSolution when the balanced triple at a is not certified.
  std::shared_ptr<const GlobalWeight> at(const RootVector& a) const {
    return cache_.get(a, [&] { return build(a); });
  }

  // Heights are solved in order; the first failing weight is reported.
  void solve_up_to(int h) const {
    for (auto& a : weights_up_to(crystal_.datum(), h)) at(a);
  }

  const Vec<RatFunc>& g(const RootVector& a, std::size_t vertex) const { return at(a)->entries.at(vertex).g; }

 private:
  GlobalWeight build(const RootVector& a) const {
    const Datum& d = crystal_.datum();
    for (auto [i, l] : ambient().lowering_into(a)) at(a - d.simple(i, l));
    GlobalWeight gw;
    gw.alpha = a;
    auto cw = crystal_.at(a);
    std::size_t n = cw->ambient_dim;
    auto m = aform_.at(a);
    gw.balanced = balanced_check(*m, cw->lattice, bar_cols(cw->lattice), n);
    if (!gw.balanced.certified)
      throw NoSolution(ambient().name() + " at " + weight_str(d, a) + ": balanced triple not certified: " + gw.balanced.witness);
    Columns gs;
    for (std::size_t k = 0; k < cw->vertices.size(); ++k) {
      auto x = lift_residue(gw.balanced, cw->vertices[k].residue, n);
      if (!x) throw NoSolution(ambient().name() + " at " + weight_str(d, a) + ": no lift for " + kword_str(d, cw->vertices[k].word));
      GlobalEntry e{k, *x};
      e.bar_invariant = bar_vec(*x) == *x;
      e.in_aform = in_a_lattice(*m, n, *x);
      auto r = residue(cw->lattice, n, *x);
      e.residue_match = r && *r == cw->vertices[k].residue;
      gs.push_back(*x);
      gw.entries.push_back(std::move(e));
    }
    gw.unimodular = same_a_lattice(gs, *m, n);
    return gw;
  }

  const Crystal& crystal_;
  AForm aform_;
  KeyedCache<RootVector, GlobalWeight> cache_;
};

// ---- ideals (b_{il}^n U^-)^A, (b_{i,c} U^-)^A, (b_{i,c} * U^-)^A and their crystal counterparts

struct IdealSpec {
  int i;
  Parts c;      // real: (n); non-isotropic imaginary: a composition; isotropic: a partition
  bool star;    // isotropic sum over the distinct parts
};

inline std::string ideal_str(const Datum& d, const IdealSpec& s) {
  std::string p;
  for (std::size_t k = 0; k < s.c.size(); ++k) p += (k ? "," : "") + std::to_string(s.c[k]);
  if (d.is_real(s.i)) return "b_" + d.name(s.i) + "^" + p;
  return std::string(s.star ? "b_" + d.name(s.i) + ",(" + p + ")*" : "b_" + d.name(s.i) + ",(" + p + ")");
}

inline std::vector<IdealSpec> ideals_at(const Datum& d, const RootVector& a) {
  std::vector<IdealSpec> out;
  for (std::size_t ii = 0; ii < d.size(); ++ii) {
    const int i = static_cast<int>(ii);
    for (int s = 1; s <= a[i]; ++s) {
      if (d.is_real(i))
        out.push_back({i, {s}, false});
      else if (d.is_isotropic(i))
        for (auto& p : partitions(s)) out.push_back({i, p, true});
      else
        for (auto& c : compositions(s)) out.push_back({i, c, false});
    }
  }
  return out;
}

// A-basis of the ideal at weight a, following the A-form descriptions
// (b_i^n U)^A = sum_{k>=n} b_i^{(k)} U_A, (b_{i,c} U)^A = b_{i,c} U_A, (b_{i,c} * U)^A = sum_k b_{ik}^{l_k} U_A.
inline Columns ideal_aform(const AForm& af, const IdealSpec& s, const RootVector& a) {
  const UMinus& u = af.ambient().uminus();
  const Datum& d = u.datum();
  std::vector<std::pair<UElement, RootVector>> parts;
  if (d.is_real(s.i)) {
    for (int k = s.c[0]; k <= a[s.i]; ++k) parts.emplace_back(u.divided_power(s.i, k), d.simple(s.i, k));
  } else if (s.star) {
    std::map<int, int> mult;
    for (int x : s.c) ++mult[x];
    for (auto [k, lk] : mult) {
      UElement p = u.one();
      for (int t = 0; t < lk; ++t) p = u.mul(p, u.b(s.i, k));
      parts.emplace_back(p, d.simple(s.i, k * lk));
    }
  } else {
    int tot = 0;
    for (int x : s.c) tot += x;
    parts.emplace_back(u.b_parts(s.i, s.c), d.simple(s.i, tot));
  }
  return af.product(parts, a);
}

// b in the crystal image set: f~_i^n B, f~_{i,c} B, or the union over k of f~_{ik}^{l_k} B.
inline bool in_crystal_ideal(const Crystal& c, const IdealSpec& s, const RootVector& a, std::size_t k) {
  const Datum& d = c.datum();
  auto chain = [&](const std::vector<int>& levels) {
    RootVector w = a;
    std::optional<std::size_t> cur = k;
    for (int l : levels) {
      if (w[s.i] < l) return false;
      cur = c.apply(Kash::e, s.i, l, w, *cur);
      if (!cur) return false;
      w = w - d.simple(s.i, l);
    }
    return true;
  };
  if (d.is_real(s.i)) return chain(std::vector<int>(s.c[0], 1));
  if (!s.star) return chain(s.c);
  std::map<int, int> mult;
  for (int x : s.c) ++mult[x];
  for (auto [lv, lk] : mult)
    if (chain(std::vector<int>(lk, lv))) return true;
  return false;
}

// ---- suites

// A(r) / B(r): every weight certified, every G(b) bar-invariant, in the A-form and lifting b,
// and the G(b) form an A-basis of the A-form.
inline SuiteResult suite_global_existence(const GlobalBasis& gb, int h) {
  SuiteResult r{"global-existence"};
  const Datum& d = gb.crystal().datum();
  const std::string name = gb.ambient().name();
  for (auto& a : weights_up_to(d, h)) {
    std::shared_ptr<const GlobalWeight> gw;
    try {
      gw = gb.at(a);
    } catch (const NoSolution& e) {
      r.check(false, [&] { return std::string(e.what()); });
      return r;
    }
    if (!r.check(gw->unimodular, [&] { return name + " at " + weight_str(d, a) + ": the G(b) are not an A-basis of the A-form"; })) return r;
    for (auto& e : gw->entries) {
      auto word = kword_str(d, gb.crystal().at(a)->vertices[e.vertex].word);
      if (!r.check(e.bar_invariant && e.in_aform && e.residue_match, [&] {
            return name + ": G(" + word + ") fails" + (e.bar_invariant ? "" : " bar-invariance") + (e.in_aform ? "" : " A-form membership") +
                   (e.residue_match ? "" : " residue match");
          }))
        return r;
    }
  }
  return r;
}

// For each (i, l, n) with e~_{il}^n b != 0: whether G(b) lies in b_{il}^n U^-. Only for U^-.
struct CrMembership {
  int i, l, n;
  bool holds;
};

inline std::vector<CrMembership> cr_memberships(const GlobalBasis& gb, const RootVector& a, std::size_t k) {
  const Crystal& c = gb.crystal();
  const Datum& d = c.datum();
  const UMinus& u = gb.ambient().uminus();
  std::vector<CrMembership> out;
  const std::size_t n_amb = c.at(a)->ambient_dim;
  for (std::size_t ii = 0; ii < d.size(); ++ii) {
    const int i = static_cast<int>(ii);
    int top = d.is_real(i) ? std::min(1, a[i]) : a[i];
    for (int l = 1; l <= top; ++l) {
      RootVector w = a;
      std::optional<std::size_t> cur = k;
      UElement pw = u.one();
      for (int n = 1; w[i] >= l; ++n) {
        cur = c.apply(Kash::e, i, l, w, *cur);
        if (!cur) break;
        w = w - d.simple(i, l);
        pw = u.mul(pw, u.b(i, l));
        Columns span;
        for (std::size_t t = 0; t < u.dim(w); ++t) span.push_back(u.mul(pw, u.basis(w, t)).coords);
        out.push_back({i, l, n, coordinates(span, n_amb, gb.g(a, k)).has_value()});
      }
    }
  }
  return out;
}

// C(r): b in f~_{il}^n B(infinity) implies G(b) in b_{il}^n U^-.
inline SuiteResult suite_global_cr(const GlobalBasis& gb, int h) {
  SuiteResult r{"global-cr"};
  const Crystal& c = gb.crystal();
  const Datum& d = c.datum();
  for (auto& a : weights_up_to(d, h)) {
    auto cw = c.at(a);
    for (std::size_t k = 0; k < cw->vertices.size(); ++k)
      for (auto& m : cr_memberships(gb, a, k))
        if (!r.check(m.holds, [&] {
              return "G(" + kword_str(d, cw->vertices[k].word) + ") not in b_(" + d.name(m.i) + "," + std::to_string(m.l) + ")^" +
                     std::to_string(m.n) + " U^-";
            }))
          return r;
  }
  return r;
}

// G(b) v_lambda = G_lambda(pi_bar(b)), and G(b) v_lambda = 0 when pi_bar(b) = 0.
inline SuiteResult suite_global_compatibility(const GlobalBasis& inf, const GlobalBasis& lam, int h) {
  SuiteResult r{"global-compatibility"};
  const Crystal& ci = inf.crystal();
  const Crystal& cl = lam.crystal();
  const VModule& v = cl.ambient().module();
  const Datum& d = ci.datum();
  for (auto& a : weights_up_to(d, h)) {
    auto cw = ci.at(a);
    for (std::size_t k = 0; k < cw->vertices.size(); ++k) {
      VElement x = v.project(UElement{a, inf.g(a, k)});
      auto img = pi_bar(ci, cl, a, k);
      bool ok = img ? x.coords == lam.g(a, *img) : x.is_zero();
      if (!r.check(ok, [&] { return "V(" + lambda_str(d, v.lambda()) + "): G(" + kword_str(d, cw->vertices[k].word) + ") v_lambda != G_lambda(pi_bar(b))"; }))
        return r;
    }
  }
  return r;
}

// The lift G_{il}(b) computed inside (b_{il} U^-)^A does not depend on (i,l).
inline SuiteResult suite_global_independence(const GlobalBasis& gb, int h) {
  SuiteResult r{"global-independence"};
  const Crystal& c = gb.crystal();
  const Datum& d = c.datum();
  for (auto& a : weights_up_to(d, h)) {
    auto cw = c.at(a);
    std::size_t n = cw->ambient_dim;
    for (std::size_t ii = 0; ii < d.size(); ++ii) {
      const int i = static_cast<int>(ii);
      int top = d.is_real(i) ? std::min(1, a[i]) : a[i];
      for (int l = 1; l <= top; ++l) {
        IdealSpec s{i, d.is_real(i) ? Parts{1} : Parts{l}, false};
        Columns nbasis = ideal_aform(gb.aform(), s, a);
        BalancedResult e = balanced_check(nbasis, cw->lattice, bar_cols(cw->lattice), n);
        if (!r.check(e.certified, [&] { return "(b_(" + d.name(i) + "," + std::to_string(l) + ") U^-)^A at " + weight_str(d, a) + ": " + e.witness; }))
          return r;
        for (std::size_t k = 0; k < cw->vertices.size(); ++k) {
          if (!c.apply(Kash::e, i, l, a, k)) continue;
          auto g = lift_residue(e, cw->vertices[k].residue, n);
          if (!r.check(g && *g == gb.g(a, k), [&] {
                return "G_(" + d.name(i) + "," + std::to_string(l) + ")(" + kword_str(d, cw->vertices[k].word) + ") differs from G(b)";
              }))
            return r;
        }
      }
    }
  }
  return r;
}

// Each ideal forms a balanced triple whose residues span exactly the
// crystal elements in the corresponding f~-image.
inline SuiteResult suite_global_ideals(const GlobalBasis& gb, int h) {
  SuiteResult r{"global-ideals"};
  const Crystal& c = gb.crystal();
  const Datum& d = c.datum();
  const std::string name = gb.ambient().name();
  for (auto& a : weights_up_to(d, h)) {
    auto cw = c.at(a);
    std::size_t n = cw->ambient_dim;
    if (n == 0) continue;
    for (auto& s : ideals_at(d, a)) {
      Columns nbasis = ideal_aform(gb.aform(), s, a);
      BalancedResult e = balanced_check(nbasis, cw->lattice, bar_cols(cw->lattice), n);
      if (!r.check(e.certified, [&] { return name + ": (" + ideal_str(d, s) + ")^A at " + weight_str(d, a) + ": " + e.witness; })) return r;
      std::vector<KVec> want;
      for (std::size_t k = 0; k < cw->vertices.size(); ++k)
        if (in_crystal_ideal(c, s, a, k)) want.push_back(cw->vertices[k].residue);
      std::vector<KVec> both = want;
      both.insert(both.end(), e.residues.begin(), e.residues.end());
      std::size_t rw = want.empty() ? 0 : rank(Matrix<RadicalRational>::from_columns(want, n));
      std::size_t rb = both.empty() ? 0 : rank(Matrix<RadicalRational>::from_columns(both, n));
      if (!r.check(e.residues.size() == want.size() && rw == want.size() && rb == want.size(), [&] {
            return name + ": residues of (" + ideal_str(d, s) + ")^A at " + weight_str(d, a) + " do not match the crystal image (" +
                   std::to_string(e.residues.size()) + " vs " + std::to_string(want.size()) + ")";
          }))
        return r;
    }
  }
  return r;
}

// Kashiwara operators preserve the A-form.
inline SuiteResult suite_aform_stability(const AForm& af, int h) {
  SuiteResult r{"aform-stability"};
  const Ambient& amb = af.ambient();
  const Datum& d = amb.datum();
  for (auto& a : weights_up_to(d, h)) {
    auto m = af.at(a);
    for (std::size_t ii = 0; ii < d.size(); ++ii) {
      const int i = static_cast<int>(ii);
      int room = h - height(a);
      int ftop = d.is_real(i) ? std::min(1, room) : room;
      int etop = d.is_real(i) ? std::min(1, a[i]) : a[i];
      for (Kash dir : {Kash::f, Kash::e})
        for (int l = 1; l <= (dir == Kash::f ? ftop : etop); ++l) {
          RootVector t = dir == Kash::f ? a + d.simple(i, l) : a - d.simple(i, l);
          auto mt = af.at(t);
          for (auto& x : *m) {
            Vec<RatFunc> y = amb.kashiwara(dir, i, l, a, x);
            if (!r.check(in_a_lattice(*mt, amb.dim(t), y), [&] {
                  return amb.name() + ": " + std::string(dir == Kash::f ? "f~" : "e~") + "_(" + d.name(i) + "," + std::to_string(l) + ") leaves the A-form at " +
                         weight_str(d, a);
                }))
              return r;
          }
        }
    }
  }
  return r;
}

// The A-form descriptions of the ideals.
inline SuiteResult suite_aform_decomposition(const AForm& af, int h) {
  SuiteResult r{"aform-decomposition"};
  const Ambient& amb = af.ambient();
  const UMinus& u = amb.uminus();
  const Datum& d = amb.datum();
  for (auto& a : weights_up_to(d, h)) {
    std::size_t n = amb.dim(a);
    if (n == 0) continue;
    auto m = af.at(a);
    for (std::size_t ii = 0; ii < d.size(); ++ii) {
      const int i = static_cast<int>(ii);
      std::vector<Parts> heads;
      for (int s = 1; s <= a[i]; ++s) {
        if (d.is_real(i))
          heads.push_back(Parts{s});
        else
          for (auto& c : compositions(s)) heads.push_back(c);
      }
      for (auto& c : heads) {
        int tot = d.is_real(i) ? c[0] : 0;
        if (!d.is_real(i))
          for (int x : c) tot += x;
        UElement head = d.is_real(i) ? u.one() : u.b_parts(i, c);
        if (d.is_real(i))
          for (int k = 0; k < tot; ++k) head = u.mul(head, u.b(i));
        RootVector rest = a - d.simple(i, tot);
        // U_A (or V^A) cap head * (everything)
        Columns span;
        for (std::size_t t = 0; t < amb.dim(rest); ++t) {
          Vec<RatFunc> e(amb.dim(rest));
          e[t] = RatFunc(1);
          span.push_back(amb.act(head, rest, e));
        }
        Columns sum = ideal_aform(af, IdealSpec{i, d.is_real(i) ? Parts{tot} : c, false}, a);
        if (!amb.is_module()) {
          Columns cap = intersect_span(*m, span, n);
          if (!r.check(same_a_lattice(cap, sum, n), [&] {
                return "U^-_A cap " + ideal_str(d, IdealSpec{i, c, false}) + " U^- differs from its A-form description at " + weight_str(d, a);
              }))
            return r;
          // direct sum over the decomposition with components in U_A cap K_i
          Columns direct;
          std::size_t pieces = 0;
          for (int s2 = 0; s2 <= rest[i]; ++s2)
            for (auto& tail : u.component_parts(i, s2)) {
              Parts full = c;
              UElement comp;
              if (d.is_real(i)) {
                full = Parts(tot + s2, 1);
                comp = u.divided_power(i, tot + s2);
              } else {
                full.insert(full.end(), tail.begin(), tail.end());
                comp = u.b_parts(i, full);
              }
              RootVector base = rest - d.simple(i, s2);
              auto ker = u.kernel_basis(i, base);
              Columns kspan(ker->begin(), ker->end());
              Columns kcap = intersect_span(*af.at(base), kspan, u.dim(base));
              for (auto& y : kcap) direct.push_back(u.mul(comp, UElement{base, y}).coords);
              pieces += kcap.size();
            }
          Columns dsum = laurent_reduce(direct, n);
          if (!r.check(dsum.size() == pieces && same_a_lattice(dsum, sum, n), [&] {
                return "direct-sum description of (" + ideal_str(d, IdealSpec{i, c, false}) + " U^-)^A fails at " + weight_str(d, a);
              }))
            return r;
        }
        // V^A_mu = sum_{k>=n} b_i^{(k)} V^A_{mu+k alpha_i} with n = -mu(h_i) > 0
        if (amb.is_module() && d.is_real(i) && tot == 1) {
          int nn = -amb.module().hweight(i, a);
          if (nn > 0) {
            Columns from = ideal_aform(af, IdealSpec{i, Parts{nn}, false}, a);
            if (!r.check(same_a_lattice(from, *m, n), [&] { return amb.name() + ": V^A at " + weight_str(d, a) + " is not generated by b_i^(k), k >= -mu(h_i)"; }))
              return r;
          }
        }
      }
    }
  }
  return r;
}

}  // namespace qbb
