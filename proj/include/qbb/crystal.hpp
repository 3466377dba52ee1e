#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbb/highest_weight.hpp"
#include "qbb/lattice.hpp"

namespace qbb {

// Either U^- (the crystal B(infinity)) or V(lambda) (the crystal B(lambda)), seen as a family
// of coordinate spaces with Kashiwara operators, a bar involution and a symmetric form.
class Ambient {
 public:
  explicit Ambient(const UMinus& u) : u_(&u) {}
  explicit Ambient(const VModule& v) : u_(&v.uminus()), v_(&v) {}

  bool is_module() const { return v_ != nullptr; }
  const UMinus& uminus() const { return *u_; }
  const VModule& module() const { return *v_; }
  const Datum& datum() const { return u_->datum(); }
  std::string name() const { return v_ ? "V(" + lambda_str(datum(), v_->lambda()) + ")" : "U-"; }

  std::size_t dim(const RootVector& a) const {
    if (!nonnegative(a)) return 0;
    return v_ ? v_->dim(a) : u_->dim(a);
  }
  Vec<RatFunc> highest() const { return v_ ? v_->highest().coords : u_->one().coords; }
  Vec<RatFunc> kashiwara(Kash dir, int i, int l, const RootVector& a, const Vec<RatFunc>& x) const {
    return v_ ? v_->kashiwara(dir, i, l, VElement{a, x}).coords : u_->kashiwara(dir, i, l, UElement{a, x}).coords;
  }
  RatFunc pair(const RootVector& a, const Vec<RatFunc>& x, const Vec<RatFunc>& y) const {
    if (x.empty()) return RatFunc();
    return v_ ? v_->form(VElement{a, x}, VElement{a, y}) : u_->pair(UElement{a, x}, UElement{a, y});
  }
  // products of generators: b_{i,l} for imaginary i, b_i^{(n)} for real i
  Vec<RatFunc> act(const UElement& x, const RootVector& a, const Vec<RatFunc>& y) const {
    if (v_) return v_->act(x, VElement{a, y}).coords;
    return u_->mul(x, UElement{a, y}).coords;
  }
  // (i, l) with f~_{il} mapping weight a - l alpha_i into weight a
  std::vector<std::pair<int, int>> lowering_into(const RootVector& a) const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < datum().size(); ++i) {
      int top = datum().is_real(i) ? std::min(1, a[i]) : a[i];
      for (int l = 1; l <= top; ++l) out.emplace_back(static_cast<int>(i), l);
    }
    return out;
  }

 private:
  const UMinus* u_;
  const VModule* v_ = nullptr;
};

using KWord = std::vector<std::pair<int, int>>;  // f~_{i1 l1} f~_{i2 l2} ... applied to the highest vector

inline bool word_less(const KWord& a, const KWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline std::string kword_str(const Datum& d, const KWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto& [i, l] : w) s += "f" + d.name(i) + std::to_string(l);
  return s;
}

struct CrystalVertex {
  KWord word;
  Vec<RatFunc> lift;  // the f~-word applied to the highest vector
  KVec residue;       // class in L/qL in lattice-basis coordinates
};

struct CrystalWeight {
  RootVector alpha;
  std::size_t ambient_dim = 0;
  Columns lattice;
  std::vector<CrystalVertex> vertices;
};

inline std::string kvec_str(const KVec& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].str();
  return s + "]";
}

class Crystal {
 public:
  explicit Crystal(Ambient a) : amb_(std::move(a)) {}
  Crystal(const Crystal&) = delete;
  Crystal& operator=(const Crystal&) = delete;

  const Ambient& ambient() const { return amb_; }
  const Datum& datum() const { return amb_.datum(); }

  std::shared_ptr<const CrystalWeight> at(const RootVector& a) const {
    return weights_.get(a, [&] { return build(a); });
  }

  std::optional<KVec> residue(const RootVector& a, const Vec<RatFunc>& x) const {
    auto w = at(a);
    if (w->ambient_dim == 0) return KVec{};
    return qbb::residue(w->lattice, w->ambient_dim, x);
  }
  std::optional<std::size_t> find(const RootVector& a, const KVec& r) const {
    auto w = at(a);
    for (std::size_t k = 0; k < w->vertices.size(); ++k)
      if (w->vertices[k].residue == r) return k;
    return std::nullopt;
  }

  // Image of a vertex under a Kashiwara operator: a vertex index, or nullopt for 0.
  // Throws InternalError if the lattice is not stable or the residue is not in B.
  std::optional<std::size_t> apply(Kash dir, int i, int l, const RootVector& a, std::size_t k) const {
    RootVector t = dir == Kash::f ? a + datum().simple(i, l) : a - datum().simple(i, l);
    if (amb_.dim(t) == 0) return std::nullopt;
    Vec<RatFunc> y = amb_.kashiwara(dir, i, l, a, at(a)->vertices.at(k).lift);
    auto r = residue(t, y);
    if (!r) throw InternalError("Kashiwara operator leaves the crystal lattice at " + weight_str(datum(), t));
    if (is_zero_vec(*r)) return std::nullopt;
    auto idx = find(t, *r);
    if (!idx) throw InternalError("Kashiwara operator residue " + kvec_str(*r) + " is not a crystal vertex at " + weight_str(datum(), t));
    return idx;
  }

  // Gram matrix of the vertices at q = 0.
  Matrix<RadicalRational> q0_gram(const RootVector& a) const {
    auto w = at(a);
    std::size_t n = w->vertices.size();
    Matrix<RadicalRational> g(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) g(x, y) = amb_.pair(a, w->vertices[x].lift, w->vertices[y].lift).value_at_zero();
    return g;
  }

 private:
  CrystalWeight build(const RootVector& a) const {
    CrystalWeight cw;
    cw.alpha = a;
    cw.ambient_dim = amb_.dim(a);
    if (cw.ambient_dim == 0) return cw;
    if (height(a) == 0) {
      Vec<RatFunc> h = amb_.highest();
      cw.lattice = {h};
      cw.vertices.push_back({{}, h, KVec{RadicalRational(1)}});
      return cw;
    }
    Columns gens;
    struct Cand {
      KWord word;
      Vec<RatFunc> lift;
    };
    std::vector<Cand> cands;
    for (auto [i, l] : amb_.lowering_into(a)) {
      RootVector s = a - datum().simple(i, l);
      auto lower = at(s);
      if (lower->ambient_dim == 0) continue;
      for (auto& b : lower->lattice) gens.push_back(amb_.kashiwara(Kash::f, i, l, s, b));
      for (auto& v : lower->vertices) {
        KWord w{{i, l}};
        w.insert(w.end(), v.word.begin(), v.word.end());
        cands.push_back({std::move(w), amb_.kashiwara(Kash::f, i, l, s, v.lift)});
      }
    }
    cw.lattice = dvr_reduce(std::move(gens), cw.ambient_dim);
    for (auto& c : cands) {
      auto r = qbb::residue(cw.lattice, cw.ambient_dim, c.lift);
      if (!r) throw InternalError("f~-word outside its own lattice at " + weight_str(datum(), a));
      if (is_zero_vec(*r)) continue;
      auto it = std::find_if(cw.vertices.begin(), cw.vertices.end(), [&](const CrystalVertex& v) { return v.residue == *r; });
      if (it == cw.vertices.end())
        cw.vertices.push_back({c.word, c.lift, *r});
      else if (word_less(c.word, it->word)) {
        it->word = c.word;
        it->lift = c.lift;
      }
    }
    std::sort(cw.vertices.begin(), cw.vertices.end(), [](const CrystalVertex& x, const CrystalVertex& y) { return word_less(x.word, y.word); });
    return cw;
  }

  Ambient amb_;
  KeyedCache<RootVector, CrystalWeight> weights_;
};

struct CrystalEdge {
  RootVector from_weight;
  std::size_t from;
  RootVector to_weight;
  std::size_t to;
  int i, l;
};

struct CrystalGraph {
  std::vector<RootVector> weights;  // in order of height
  std::vector<CrystalEdge> edges;
};

// All vertices of height <= depth reached from the highest vertex, with their f~-edges.
inline CrystalGraph crystal_graph(const Crystal& c, int depth) {
  CrystalGraph g;
  const Datum& d = c.datum();
  for (auto& a : weights_up_to(d, depth))
    if (!c.at(a)->vertices.empty()) g.weights.push_back(a);
  for (auto& a : g.weights) {
    auto w = c.at(a);
    for (std::size_t k = 0; k < w->vertices.size(); ++k)
      for (std::size_t i = 0; i < d.size(); ++i) {
        int top = d.is_real(i) ? std::min(1, depth - height(a)) : depth - height(a);
        for (int l = 1; l <= top; ++l) {
          auto to = c.apply(Kash::f, static_cast<int>(i), l, a, k);
          if (to) g.edges.push_back({a, k, a + d.simple(i, l), *to, static_cast<int>(i), l});
        }
      }
  }
  return g;
}

inline std::string vertex_id(const Datum& d, const RootVector& a, std::size_t k) {
  std::string s = "v";
  for (std::size_t i = 0; i < d.size(); ++i) s += "_" + std::to_string(a[i]);
  return s + "_" + std::to_string(k);
}

inline std::string crystal_dot(const Crystal& c, const CrystalGraph& g) {
  const Datum& d = c.datum();
  std::string s = "digraph crystal {\n";
  for (auto& a : g.weights) {
    auto w = c.at(a);
    for (std::size_t k = 0; k < w->vertices.size(); ++k)
      s += "  " + vertex_id(d, a, k) + " [label=\"" + kword_str(d, w->vertices[k].word) + "\"];\n";
  }
  for (auto& e : g.edges)
    s += "  " + vertex_id(d, e.from_weight, e.from) + " -> " + vertex_id(d, e.to_weight, e.to) + " [label=\"(" + d.name(e.i) + "," +
         std::to_string(e.l) + ")\"];\n";
  return s + "}\n";
}

// ---- checks

inline bool is_identity(const Matrix<RadicalRational>& m) {
  return m == Matrix<RadicalRational>::identity(m.rows());
}

// q0_gram is the identity and the vertices exhaust the rank of the lattice.
inline SuiteResult suite_orthonormality(const Crystal& c, int h) {
  SuiteResult r{"crystal-orthonormality"};
  const Datum& d = c.datum();
  for (auto& a : weights_up_to(d, h)) {
    auto w = c.at(a);
    if (!r.check(w->vertices.size() == w->lattice.size() && w->lattice.size() == w->ambient_dim, [&] {
          return c.ambient().name() + " at " + weight_str(d, a) + ": " + std::to_string(w->vertices.size()) + " vertices, lattice rank " +
                 std::to_string(w->lattice.size()) + ", dimension " + std::to_string(w->ambient_dim);
        }))
      return r;
    bool ok = false;
    try {
      ok = is_identity(c.q0_gram(a));
    } catch (const NotRegularAtZero&) {
    }
    if (!r.check(ok, [&] { return c.ambient().name() + " at " + weight_str(d, a) + ": q=0 Gram of the crystal is not the identity"; }))
      return r;
  }
  return r;
}

// (e~ u, v)_0 = (u, f~ v)_0 on vertices, computed on lifts, and stability of the lattice.
inline SuiteResult suite_q0_adjunction(const Crystal& c, int h) {
  SuiteResult r{"crystal-adjunction"};
  const Datum& d = c.datum();
  const Ambient& amb = c.ambient();
  for (auto& a : weights_up_to(d, h)) {
    auto w = c.at(a);
    for (std::size_t i = 0; i < d.size(); ++i) {
      int top = d.is_real(i) ? std::min(1, a[i]) : a[i];
      for (int l = 1; l <= top; ++l) {
        RootVector s = a - d.simple(i, l);
        auto lw = c.at(s);
        for (std::size_t x = 0; x < w->vertices.size(); ++x) {
          Vec<RatFunc> ex = amb.kashiwara(Kash::e, i, l, a, w->vertices[x].lift);
          for (std::size_t y = 0; y < lw->vertices.size(); ++y) {
            Vec<RatFunc> fy = amb.kashiwara(Kash::f, i, l, s, lw->vertices[y].lift);
            RatFunc lhs = amb.pair(s, ex, lw->vertices[y].lift), rhs = amb.pair(a, w->vertices[x].lift, fy);
            bool ok = lhs.regular_at_zero() && rhs.regular_at_zero() && lhs.value_at_zero() == rhs.value_at_zero();
            if (!r.check(ok, [&] {
                  return amb.name() + ": (e~ " + kword_str(d, w->vertices[x].word) + ", " + kword_str(d, lw->vertices[y].word) +
                         ")_0 != (.., f~ ..)_0 for (" + d.name(i) + "," + std::to_string(l) + ")";
                }))
              return r;
          }
        }
      }
    }
  }
  return r;
}

// The exact Gram matrix of the lattice basis lies in A_0 with a unit determinant at q = 0.
inline SuiteResult suite_lattice_self_duality(const Crystal& c, int h) {
  SuiteResult r{"lattice-self-duality"};
  const Datum& d = c.datum();
  for (auto& a : weights_up_to(d, h)) {
    auto w = c.at(a);
    std::size_t n = w->lattice.size();
    if (n == 0) continue;
    Matrix<RadicalRational> g(n, n);
    bool regular = true;
    for (std::size_t x = 0; x < n && regular; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        RatFunc v = c.ambient().pair(a, w->lattice[x], w->lattice[y]);
        if (!v.regular_at_zero()) {
          regular = false;
          break;
        }
        g(x, y) = v.value_at_zero();
      }
    if (!r.check(regular && rank(g) == n, [&] { return c.ambient().name() + " at " + weight_str(d, a) + ": lattice Gram not unimodular over A_0"; }))
      return r;
  }
  return r;
}

// e~ inverts f~ on the crystal graph.
inline SuiteResult suite_crystal_inverse(const Crystal& c, int h) {
  SuiteResult r{"crystal-inverse"};
  const Datum& d = c.datum();
  CrystalGraph g = crystal_graph(c, h);
  for (auto& e : g.edges) {
    auto back = c.apply(Kash::e, e.i, e.l, e.to_weight, e.to);
    if (!r.check(back && *back == e.from, [&] { return "e~ does not invert the edge " + vertex_id(d, e.from_weight, e.from) + " -> " + vertex_id(d, e.to_weight, e.to); }))
      return r;
  }
  return r;
}

// pi_bar: the residue of pi_lambda(lift of b) in L(lambda)/qL(lambda); nullopt means zero.
inline std::optional<std::size_t> pi_bar(const Crystal& inf, const Crystal& lam, const RootVector& a, std::size_t k) {
  const VModule& v = lam.ambient().module();
  if (v.dim(a) == 0) return std::nullopt;
  VElement x = v.project(UElement{a, inf.at(a)->vertices.at(k).lift});
  auto r = lam.residue(a, x.coords);
  if (!r) throw InternalError("pi_lambda does not map L(infinity) into L(lambda) at " + weight_str(inf.datum(), a));
  if (is_zero_vec(*r)) return std::nullopt;
  auto idx = lam.find(a, *r);
  if (!idx) throw InternalError("pi_bar residue is not a vertex of B(lambda) at " + weight_str(inf.datum(), a));
  return idx;
}

// pi_bar is a bijection from {b : pi_bar(b) != 0} onto B(lambda), f~ commutes with it and
// e~ commutes with it on vertices with nonzero image.
inline SuiteResult suite_projection(const Crystal& inf, const Crystal& lam, int h) {
  SuiteResult r{"crystal-projection"};
  const Datum& d = inf.datum();
  const std::string lname = lam.ambient().name();
  for (auto& a : weights_up_to(d, h)) {
    auto wi = inf.at(a);
    std::vector<std::optional<std::size_t>> img;
    try {
      for (std::size_t k = 0; k < wi->vertices.size(); ++k) img.push_back(pi_bar(inf, lam, a, k));
    } catch (const InternalError& e) {
      r.check(false, [&] { return lname + ": " + e.what(); });
      return r;
    }
    std::vector<int> hits(lam.at(a)->vertices.size(), 0);
    for (auto& x : img)
      if (x) ++hits[*x];
    bool bij = std::all_of(hits.begin(), hits.end(), [](int x) { return x == 1; });
    if (!r.check(bij, [&] { return lname + " at " + weight_str(d, a) + ": pi_bar is not a bijection onto B(lambda)"; })) return r;
    for (std::size_t k = 0; k < wi->vertices.size(); ++k)
      for (std::size_t i = 0; i < d.size(); ++i) {
        int room = h - height(a);
        int ftop = d.is_real(i) ? std::min(1, room) : room;
        for (int l = 1; l <= ftop; ++l) {
          RootVector t = a + d.simple(i, l);
          auto fb = inf.apply(Kash::f, i, l, a, k);
          std::optional<std::size_t> lhs = fb ? pi_bar(inf, lam, t, *fb) : std::nullopt;
          std::optional<std::size_t> rhs = img[k] ? lam.apply(Kash::f, i, l, a, *img[k]) : std::nullopt;
          if (!r.check(lhs == rhs, [&] {
                return lname + ": f~_(" + d.name(i) + "," + std::to_string(l) + ") does not commute with pi_bar on " + kword_str(d, wi->vertices[k].word);
              }))
            return r;
        }
        if (!img[k]) continue;
        int etop = d.is_real(i) ? std::min(1, a[i]) : a[i];
        for (int l = 1; l <= etop; ++l) {
          RootVector s = a - d.simple(i, l);
          auto eb = inf.apply(Kash::e, i, l, a, k);
          std::optional<std::size_t> lhs = eb ? pi_bar(inf, lam, s, *eb) : std::nullopt;
          std::optional<std::size_t> rhs = lam.apply(Kash::e, i, l, a, *img[k]);
          if (!r.check(lhs == rhs, [&] {
                return lname + ": e~_(" + d.name(i) + "," + std::to_string(l) + ") does not commute with pi_bar on " + kword_str(d, wi->vertices[k].word);
              }))
            return r;
        }
      }
  }
  return r;
}

// For lambda >> 0, {P v, Q v} = c (P, Q)_L mod q with one unit c per weight, on an
// A_0-basis of L(infinity).
inline SuiteResult suite_form_comparison(const Crystal& inf, const VModule& v, int h) {
  SuiteResult r{"form-comparison"};
  const Datum& d = inf.datum();
  const UMinus& u = v.uminus();
  for (auto& a : weights_up_to(d, h)) {
    auto w = inf.at(a);
    std::optional<RadicalRational> c;
    bool ok = true;
    for (std::size_t x = 0; x < w->lattice.size() && ok; ++x)
      for (std::size_t y = 0; y < w->lattice.size() && ok; ++y) {
        UElement px{a, w->lattice[x]}, py{a, w->lattice[y]};
        RatFunc lus = u.pair(px, py), con = v.form(v.project(px), v.project(py));
        if (!lus.regular_at_zero() || !con.regular_at_zero()) {
          ok = false;
          break;
        }
        RadicalRational l0 = lus.value_at_zero(), c0 = con.value_at_zero();
        if (!c && !l0.is_zero()) c = c0 / l0;
        if (c) ok = c0 == *c * l0;
        else ok = c0.is_zero();
      }
    if (!r.check(ok && (w->lattice.empty() || (c && !c->is_zero())), [&] {
          return "V(" + lambda_str(d, v.lambda()) + ") at " + weight_str(d, a) + ": no single unit c with {Pv,Qv} = c (P,Q)_L mod q";
        }))
      return r;
  }
  return r;
}

}  // namespace qbb
