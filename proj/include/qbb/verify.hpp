#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "qbb/global_basis.hpp"
#include "qbb/uminus_suites.hpp"

namespace qbb {

// U^- and the modules V(lambda) with their crystals and global bases, shared by all suites.
// Every cache underneath is mutex-guarded, so suites may run on several threads at once.
class Workbench {
 public:
  struct Module {
    Module(const UMinus& u, DominantWeight lam) : v(u, std::move(lam)), crystal(Ambient(v)), global(crystal) {}
    VModule v;
    Crystal crystal;
    GlobalBasis global;
  };

  Workbench(LusztigForm form, const std::vector<DominantWeight>& lambdas)
      : u_(std::move(form)), crystal_(Ambient(u_)), global_(crystal_) {
    for (auto& l : lambdas) modules_.push_back(std::make_unique<Module>(u_, l));
  }
  Workbench(const Workbench&) = delete;
  Workbench& operator=(const Workbench&) = delete;

  const UMinus& uminus() const { return u_; }
  const Datum& datum() const { return u_.datum(); }
  const Crystal& crystal() const { return crystal_; }
  const GlobalBasis& global() const { return global_; }
  const std::vector<std::unique_ptr<Module>>& modules() const { return modules_; }

 private:
  UMinus u_;
  Crystal crystal_;
  GlobalBasis global_;
  std::vector<std::unique_ptr<Module>> modules_;
};

// ---- suites that live below the U^- model

// Higher order Serre elements lie in the radical, for every real i and j != i.
inline SuiteResult suite_serre(const LusztigForm& form, int max_m, int max_n) {
  SuiteResult r{"serre"};
  const Datum& d = form.datum();
  for (std::size_t ii = 0; ii < d.size(); ++ii) {
    const int i = static_cast<int>(ii);
    if (!d.is_real(i)) continue;
    for (std::size_t jj = 0; jj < d.size(); ++jj) {
      const int j = static_cast<int>(jj);
      if (j == i) continue;
      for (int n = 0; n <= max_n; ++n) {
        std::vector<Parts> cs = n == 0 ? std::vector<Parts>{Parts{}} : d.is_real(j) ? std::vector<Parts>{Parts(n, 1)} : compositions(n);
        for (auto& c : cs)
          for (int m = -d.a(i, j) * n + 1; m <= max_m; ++m)
            for (int sign : {1, -1}) {
              bool ok = form.radical_contains(serre_element(d, i, j, m, c, sign));
              if (!r.check(ok, [&] {
                    return "Serre element i=" + d.name(i) + " j=" + d.name(j) + " m=" + std::to_string(m) + " c=" + parts_str(c) + " sign=" +
                           std::to_string(sign) + " is not in the radical";
                  }))
                return r;
            }
      }
    }
  }
  return r;
}

// [f_ik, f_jl] lies in the radical whenever a_ij = 0.
inline SuiteResult suite_commutator(const LusztigForm& form, int max_level) {
  SuiteResult r{"commutator"};
  const Datum& d = form.datum();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i; j < d.size(); ++j) {
      if (d.a(i, j) != 0) continue;
      int ki = d.is_real(i) ? 1 : max_level, kj = d.is_real(j) ? 1 : max_level;
      for (int k = 1; k <= ki; ++k)
        for (int l = 1; l <= kj; ++l) {
          bool ok = form.radical_contains(commutator_element(d, static_cast<int>(i), k, static_cast<int>(j), l));
          if (!r.check(ok, [&] {
                return "[f_(" + d.name(i) + "," + std::to_string(k) + "), f_(" + d.name(j) + "," + std::to_string(l) + ")] is not in the radical";
              }))
            return r;
        }
    }
  return r;
}

// tau_{il} is 1/l at q = 0 for isotropic i and 1 for the other imaginary indices.
inline SuiteResult suite_tau_congruence(const UMinus& u, int h) {
  SuiteResult r{"tau-congruence"};
  const Datum& d = u.datum();
  for (std::size_t ii = 0; ii < d.size(); ++ii) {
    const int i = static_cast<int>(ii);
    if (d.is_real(i)) continue;
    for (int l = 1; l <= h; ++l) {
      RadicalRational want = d.is_isotropic(i) ? RadicalRational(mpq_class(1, l)) : RadicalRational(1);
      RatFunc t = u.tau(i, l);
      bool ok = t.regular_at_zero() && value_at_zero(t) == want;
      if (!r.check(ok, [&] { return "tau_(" + d.name(i) + "," + std::to_string(l) + ") = " + t.str() + " is not " + want.str() + " at q = 0"; }))
        return r;
    }
  }
  return r;
}

// sum over partitions lambda of l of 1 / prod_k (k^{m_k} m_k!) equals 1.
inline SuiteResult suite_partition_identity(int max_l) {
  SuiteResult r{"partition-identity"};
  for (int l = 1; l <= max_l; ++l) {
    mpq_class s = 0;
    for (auto& p : partitions(l)) {
      mpq_class den = 1;
      for (int k = 1; k <= l; ++k) {
        int m = multiplicity(p, k);
        for (int t = 0; t < m; ++t) den *= k;
        den *= factorial(m);
      }
      s += 1 / den;
    }
    if (!r.check(s == 1, [&] { return "partition sum at l = " + std::to_string(l) + " is " + s.get_str(); })) return r;
  }
  return r;
}

// ---- registry

struct SuiteSpec {
  std::string name;
  std::function<SuiteResult(const Workbench&, int)> run;
};

namespace detail {

// Runs fn once for U^- (when with_uminus) and once per module, keeping the first counterexample.
template <class Fn>
SuiteResult over_ambients(const std::string& name, const Workbench& w, bool with_uminus, Fn&& fn) {
  SuiteResult r{name};
  if (with_uminus) r.absorb(fn(nullptr));
  for (auto& m : w.modules()) {
    if (!r.pass) break;
    r.absorb(fn(m.get()));
  }
  r.name = name;
  return r;
}

inline SuiteResult renamed(SuiteResult r, const std::string& name) {
  r.name = name;
  return r;
}

}  // namespace detail

inline const std::vector<SuiteSpec>& suite_registry() {
  using M = const Workbench::Module*;
  static const std::vector<SuiteSpec> specs = [] {
    std::vector<SuiteSpec> s;
    s.push_back({"serre", [](const Workbench& w, int h) { return suite_serre(w.uminus().form(), h, (h + 1) / 2); }});
    s.push_back({"commutator", [](const Workbench& w, int h) { return suite_commutator(w.uminus().form(), h); }});
    s.push_back({"tau-congruence", [](const Workbench& w, int h) { return suite_tau_congruence(w.uminus(), h); }});
    s.push_back({"partition-identity", [](const Workbench&, int h) { return suite_partition_identity(std::max(8, h)); }});
    for (auto& [name, fn] : uminus_suites()) {
      auto run = fn;
      s.push_back({name, [run](const Workbench& w, int h) { return run(w.uminus(), h); }});
    }
    s.push_back({"qbrace-action", [](const Workbench& w, int h) {
                   return detail::over_ambients("qbrace-action", w, false, [&](M m) { return suite_qbrace_action(m->v, h); });
                 }});
    s.push_back({"sl2-recovery", [](const Workbench& w, int h) {
                   return detail::over_ambients("sl2-recovery", w, false, [&](M m) { return suite_sl2_recovery(m->v, h); });
                 }});
    s.push_back({"crystal-orthonormality", [](const Workbench& w, int h) {
                   return detail::over_ambients("crystal-orthonormality", w, true,
                                                [&](M m) { return suite_orthonormality(m ? m->crystal : w.crystal(), h); });
                 }});
    s.push_back({"crystal-q0-adjunction", [](const Workbench& w, int h) {
                   return detail::over_ambients("crystal-q0-adjunction", w, true,
                                                [&](M m) { return suite_q0_adjunction(m ? m->crystal : w.crystal(), h); });
                 }});
    s.push_back({"lattice-self-duality", [](const Workbench& w, int h) {
                   return detail::over_ambients("lattice-self-duality", w, true,
                                                [&](M m) { return suite_lattice_self_duality(m ? m->crystal : w.crystal(), h); });
                 }});
    s.push_back({"crystal-inverse", [](const Workbench& w, int h) {
                   return detail::over_ambients("crystal-inverse", w, true,
                                                [&](M m) { return suite_crystal_inverse(m ? m->crystal : w.crystal(), h); });
                 }});
    s.push_back({"projection", [](const Workbench& w, int h) {
                   return detail::over_ambients("projection", w, false, [&](M m) { return suite_projection(w.crystal(), m->crystal, h); });
                 }});
    s.push_back({"form-comparison", [](const Workbench& w, int h) {
                   // lambda >> 0 is read as lambda(h_i) >= h for every i
                   return detail::over_ambients("form-comparison", w, false, [&](M m) {
                     auto& l = m->v.lambda();
                     if (*std::min_element(l.begin(), l.end()) < h) return SuiteResult{"form-comparison"};
                     return suite_form_comparison(w.crystal(), m->v, h);
                   });
                 }});
    s.push_back({"global-existence", [](const Workbench& w, int h) {
                   return detail::over_ambients("global-existence", w, true,
                                                [&](M m) { return suite_global_existence(m ? m->global : w.global(), h); });
                 }});
    s.push_back({"global-cr", [](const Workbench& w, int h) { return suite_global_cr(w.global(), h); }});
    s.push_back({"global-compatibility", [](const Workbench& w, int h) {
                   return detail::over_ambients("global-compatibility", w, false,
                                                [&](M m) { return suite_global_compatibility(w.global(), m->global, h); });
                 }});
    s.push_back({"global-independence", [](const Workbench& w, int h) { return suite_global_independence(w.global(), h); }});
    s.push_back({"global-ideals", [](const Workbench& w, int h) {
                   return detail::over_ambients("global-ideals", w, true,
                                                [&](M m) { return suite_global_ideals(m ? m->global : w.global(), h); });
                 }});
    s.push_back({"aform-stability", [](const Workbench& w, int h) { return suite_aform_stability(w.global().aform(), h); }});
    s.push_back({"aform-decomposition", [](const Workbench& w, int h) {
                   return detail::over_ambients("aform-decomposition", w, true,
                                                [&](M m) { return suite_aform_decomposition((m ? m->global : w.global()).aform(), h); });
                 }});
    return s;
  }();
  return specs;
}

inline const SuiteSpec* find_suite(const std::string& name) {
  for (auto& s : suite_registry())
    if (s.name == name) return &s;
  return nullptr;
}

// Runs the selected suites on a pool of `jobs` threads; results come back in selection order.
// Exceptions inside a suite become a failed result carrying the message.
inline std::vector<SuiteResult> run_suites(const Workbench& w, const std::vector<const SuiteSpec*>& sel, int h, int jobs) {
  std::vector<SuiteResult> out(sel.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < sel.size();) {
      try {
        out[k] = detail::renamed(sel[k]->run(w, h), sel[k]->name);
      } catch (const std::exception& e) {
        out[k] = SuiteResult{sel[k]->name, false, 0, std::string("exception: ") + e.what()};
      }
    }
  };
  std::size_t n = std::min<std::size_t>(std::max(1, jobs), std::max<std::size_t>(1, sel.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace qbb
