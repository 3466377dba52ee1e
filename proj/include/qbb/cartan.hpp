#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbb {

struct InvalidDatum : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnknownIndex : std::out_of_range {
  using std::out_of_range::out_of_range;
};

enum class IndexKind { real, imaginary, isotropic };

// Coefficients of alpha in Q_+ indexed by position in the datum.
using RootVector = std::vector<int>;
// <h_i, lambda> indexed by position in the datum.
using DominantWeight = std::vector<int>;

inline int height(const RootVector& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline RootVector operator+(RootVector a, const RootVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}
inline RootVector operator-(RootVector a, const RootVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}
inline bool nonnegative(const RootVector& a) {
  for (int x : a)
    if (x < 0) return false;
  return true;
}

class Datum {
 public:
  Datum() = default;
  Datum(std::vector<std::string> names, std::vector<std::vector<int>> a, std::vector<int> r)
      : names_(std::move(names)), a_(std::move(a)), r_(std::move(r)) {
    if (auto v = violation(names_, a_, r_)) throw InvalidDatum(*v);
  }

  // First violated condition, or nullopt when the datum is valid.
  static std::optional<std::string> violation(const std::vector<std::string>& names,
                                              const std::vector<std::vector<int>>& a,
                                              const std::vector<int>& r) {
    std::size_t n = names.size();
    if (n == 0) return "empty index set";
    if (a.size() != n) return "cartan matrix has " + std::to_string(a.size()) + " rows, expected " + std::to_string(n);
    if (r.size() != n) return "symmetrizer has " + std::to_string(r.size()) + " entries, expected " + std::to_string(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].size() != n) return "cartan row " + std::to_string(i) + " has wrong length";
      for (std::size_t j = 0; j < i; ++j)
        if (names[i] == names[j]) return "duplicate index name '" + names[i] + "'";
    }
    for (std::size_t i = 0; i < n; ++i)
      if (r[i] <= 0) return "symmetrizer entry r_" + names[i] + " = " + std::to_string(r[i]) + " is not positive";
    for (std::size_t i = 0; i < n; ++i) {
      int d = a[i][i];
      if (d > 2 || d == 1 || d % 2 != 0)
        return "diagonal entry a_" + names[i] + names[i] + " = " + std::to_string(d) +
               " is not in {2, 0, -2, -4, ...}";
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && a[i][j] > 0)
          return "off-diagonal entry a_" + names[i] + names[j] + " = " + std::to_string(a[i][j]) + " is positive";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (r[i] * a[i][j] != r[j] * a[j][i])
          return "DA not symmetric at (" + names[i] + "," + names[j] + "): r_i a_ij = " +
                 std::to_string(r[i] * a[i][j]) + ", r_j a_ji = " + std::to_string(r[j] * a[j][i]);
    return std::nullopt;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    throw UnknownIndex("unknown index '" + name + "'");
  }
  const std::vector<std::vector<int>>& cartan() const { return a_; }
  const std::vector<int>& symmetrizer() const { return r_; }

  int a(std::size_t i, std::size_t j) const { return a_[i][j]; }
  int r(std::size_t i) const { return r_[i]; }
  IndexKind kind(std::size_t i) const {
    if (a_[i][i] == 2) return IndexKind::real;
    return a_[i][i] == 0 ? IndexKind::isotropic : IndexKind::imaginary;
  }
  bool is_real(std::size_t i) const { return a_[i][i] == 2; }
  bool is_imaginary(std::size_t i) const { return a_[i][i] <= 0; }
  bool is_isotropic(std::size_t i) const { return a_[i][i] == 0; }

  // (alpha_i, alpha_j) = r_i a_ij
  int pair(std::size_t i, std::size_t j) const { return r_[i] * a_[i][j]; }
  int pairing(const RootVector& x, const RootVector& y) const {
    if (x.size() != size() || y.size() != size()) throw UnknownIndex("root vector of wrong rank");
    int s = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) s += x[i] * y[j] * pair(i, j);
    return s;
  }
  // (alpha_i, beta)
  int pair_simple(std::size_t i, const RootVector& b) const {
    int s = 0;
    for (std::size_t j = 0; j < size(); ++j) s += pair(i, j) * b[j];
    return s;
  }
  // <h_i, beta> = sum_j a_ij beta_j
  int hpair(std::size_t i, const RootVector& b) const {
    int s = 0;
    for (std::size_t j = 0; j < size(); ++j) s += a_[i][j] * b[j];
    return s;
  }
  // q_i = q^{r_i}, q_(i) = q^{(alpha_i, alpha_i)/2}
  int qi_exp(std::size_t i) const { return r_[i]; }
  int qparen_exp(std::size_t i) const { return pair(i, i) / 2; }

  RootVector zero() const { return RootVector(size(), 0); }
  RootVector simple(std::size_t i, int mult = 1) const {
    RootVector v(size(), 0);
    v[i] = mult;
    return v;
  }

  friend bool operator==(const Datum& x, const Datum& y) {
    return x.names_ == y.names_ && x.a_ == y.a_ && x.r_ == y.r_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> a_;
  std::vector<int> r_;
};

}  // namespace qbb
