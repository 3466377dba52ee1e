#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "qbb/verify.hpp"

namespace qbb {

using Json = nlohmann::ordered_json;

inline Json datum_json(const Datum& d) {
  Json j;
  Json names = Json::array(), a = Json::array(), r = Json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    names.push_back(d.name(i));
    Json row = Json::array();
    for (std::size_t k = 0; k < d.size(); ++k) row.push_back(d.a(i, k));
    a.push_back(row);
    r.push_back(d.r(i));
  }
  j["indices"] = names;
  j["cartan"] = a;
  j["symmetrizer"] = r;
  return j;
}

inline Json gram_json(const LusztigForm& form, const RootVector& a) {
  const Datum& d = form.datum();
  auto words = words_of_weight(d, a);
  Matrix<RatFunc> g = form.gram(words, words);
  Json j;
  j["weight"] = weight_str(d, a);
  Json ws = Json::array();
  for (auto& w : words) ws.push_back(word_str(d, w));
  j["words"] = ws;
  Json m = Json::array();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(g(r, c).str());
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

inline Json expansion_json(const Datum& d, const FreeElement& x) {
  Json out = Json::array();
  for (auto& [w, c] : x.terms()) out.push_back(Json{{"word", word_str(d, w)}, {"coeff", c.str()}});
  return out;
}

inline Json primitives_json(const UMinus& u, int i, int max_l) {
  const Datum& d = u.datum();
  Json j;
  j["index"] = d.name(i);
  j["kind"] = d.is_real(i) ? "real" : d.is_isotropic(i) ? "isotropic" : "imaginary";
  Json levels = Json::array();
  int top = d.is_real(i) ? std::min(1, max_l) : max_l;
  for (int l = 1; l <= top; ++l) {
    auto p = u.primitive(i, l);
    Json e;
    e["level"] = l;
    e["tau"] = p->tau.str();
    e["tau_at_zero"] = p->tau.regular_at_zero() ? p->tau.value_at_zero().str() : std::string("pole");
    e["expansion"] = expansion_json(d, p->expansion);
    levels.push_back(e);
  }
  j["levels"] = levels;
  return j;
}

inline Json crystal_json(const Crystal& c, const CrystalGraph& g) {
  const Datum& d = c.datum();
  Json j;
  j["ambient"] = c.ambient().name();
  Json vs = Json::array();
  for (auto& a : g.weights) {
    auto w = c.at(a);
    for (std::size_t k = 0; k < w->vertices.size(); ++k)
      vs.push_back(Json{{"id", vertex_id(d, a, k)}, {"weight", weight_str(d, a)}, {"word", kword_str(d, w->vertices[k].word)},
                        {"residue", kvec_str(w->vertices[k].residue)}});
  }
  j["vertices"] = vs;
  Json es = Json::array();
  for (auto& e : g.edges)
    es.push_back(Json{{"from", vertex_id(d, e.from_weight, e.from)}, {"to", vertex_id(d, e.to_weight, e.to)}, {"index", d.name(e.i)}, {"level", e.l}});
  j["edges"] = es;
  return j;
}

// Labels of the ambient coordinates at weight a: pivot words of U^-, or pivot words applied to v_lambda.
inline std::vector<std::string> coordinate_labels(const Ambient& amb, const RootVector& a) {
  const UMinus& u = amb.uminus();
  const Datum& d = u.datum();
  auto us = u.space(a);
  std::vector<std::string> out;
  if (!amb.is_module()) {
    for (std::size_t k = 0; k < us->dim(); ++k) out.push_back(word_str(d, us->pivot_word(k)));
  } else {
    for (auto p : amb.module().space(a)->basis) out.push_back(word_str(d, us->pivot_word(p)) + "v");
  }
  return out;
}

struct GlobalRow {
  std::string weight, word;
  std::vector<std::pair<std::string, std::string>> expansion;
  bool bar_invariant, in_aform, residue_match;
  std::vector<std::string> cr;  // "(i,l)^n" memberships that hold
  bool cr_ok = true;
};

// Throws NoSolution when a weight cannot be certified.
inline std::vector<GlobalRow> global_rows(const GlobalBasis& gb, int h) {
  const Datum& d = gb.crystal().datum();
  std::vector<GlobalRow> rows;
  gb.solve_up_to(h);
  for (auto& a : weights_up_to(d, h)) {
    auto gw = gb.at(a);
    auto cw = gb.crystal().at(a);
    auto labels = coordinate_labels(gb.ambient(), a);
    for (auto& e : gw->entries) {
      GlobalRow r{weight_str(d, a), kword_str(d, cw->vertices[e.vertex].word), {}, e.bar_invariant, e.in_aform, e.residue_match, {}};
      for (std::size_t t = 0; t < e.g.size(); ++t)
        if (!e.g[t].is_zero()) r.expansion.emplace_back(labels[t], e.g[t].str());
      if (!gb.ambient().is_module())
        for (auto& m : cr_memberships(gb, a, e.vertex)) {
          if (m.holds)
            r.cr.push_back("(" + d.name(m.i) + "," + std::to_string(m.l) + ")^" + std::to_string(m.n));
          else
            r.cr_ok = false;
        }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline Json global_json(const GlobalBasis& gb, const std::vector<GlobalRow>& rows) {
  Json j;
  j["ambient"] = gb.ambient().name();
  Json out = Json::array();
  for (auto& r : rows) {
    Json e;
    e["weight"] = r.weight;
    e["vertex"] = r.word;
    Json x = Json::array();
    for (auto& [w, c] : r.expansion) x.push_back(Json{{"word", w}, {"coeff", c}});
    e["expansion"] = x;
    e["bar_invariant"] = r.bar_invariant;
    e["in_a_form"] = r.in_aform;
    e["residue_match"] = r.residue_match;
    if (!gb.ambient().is_module()) e["c_r"] = r.cr;
    out.push_back(e);
  }
  j["entries"] = out;
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string global_csv(const std::vector<GlobalRow>& rows) {
  std::string s = "weight,vertex,expansion,bar_invariant,in_a_form,residue_match,c_r\n";
  for (auto& r : rows) {
    std::string x, cr;
    for (auto& [w, c] : r.expansion) x += (x.empty() ? "" : " + ") + std::string("(") + c + ")*" + w;
    for (auto& m : r.cr) cr += (cr.empty() ? "" : " ") + m;
    s += csv_field(r.weight) + "," + csv_field(r.word) + "," + csv_field(x) + "," + (r.bar_invariant ? "1" : "0") + "," + (r.in_aform ? "1" : "0") +
         "," + (r.residue_match ? "1" : "0") + "," + csv_field(cr) + "\n";
  }
  return s;
}

inline Json suite_json(const SuiteResult& r) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["checks"] = r.checks;
  if (!r.pass) j["counterexample"] = r.counterexample;
  return j;
}

inline Json verify_json(const Datum& d, int h, const std::vector<DominantWeight>& lambdas, const std::vector<SuiteResult>& results) {
  Json j;
  j["datum"] = datum_json(d);
  j["height"] = h;
  Json ls = Json::array();
  for (auto& l : lambdas) ls.push_back(lambda_str(d, l));
  j["lambdas"] = ls;
  Json rs = Json::array();
  bool all = true;
  for (auto& r : results) {
    rs.push_back(suite_json(r));
    all = all && r.pass;
  }
  j["suites"] = rs;
  j["pass"] = all;
  return j;
}

}  // namespace qbb
