#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qbb/free_algebra.hpp"
#include "qbb/matrix.hpp"
#include "qbb/parse.hpp"

namespace qbb {

struct HeightBoundExceeded : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// nu_{il} = (f_il, f_il); a default value plus per-letter overrides.
class NuAssignment {
 public:
  NuAssignment() : default_(1), default_text_("1") {}

  void set_default(const std::string& text) {
    default_ = parse_ratfunc(text);
    default_text_ = text;
  }
  void set(int i, int l, const std::string& text) {
    overrides_[{i, l}] = {parse_ratfunc(text), text};
  }
  const RatFunc& value(int i, int l) const {
    auto it = overrides_.find({i, l});
    return it == overrides_.end() ? default_ : it->second.first;
  }
  const std::string& default_text() const { return default_text_; }
  std::map<std::pair<int, int>, std::string> override_texts() const {
    std::map<std::pair<int, int>, std::string> out;
    for (auto& [k, v] : overrides_) out[k] = v.second;
    return out;
  }

  // Canonical description used in cache keys.
  std::string canonical() const {
    std::string s = "default=" + default_.str();
    for (auto& [k, v] : overrides_)
      s += ";" + std::to_string(k.first) + "," + std::to_string(k.second) + "=" + v.first.str();
    return s;
  }

  // Syntactic check that a value looks like an element of 1 + qZ>=0[[q]]: either 1 or
  // 1/(1 - sum of q-powers with positive integer coefficients).
  static bool looks_regular(const RatFunc& v) {
    if (v == RatFunc(1)) return true;
    if (!v.num().is_constant() || !(v.num().coeff(0) == RadicalRational(1))) return false;
    const auto& d = v.den();
    if (!(d.coeff(0) == RadicalRational(1))) return false;
    for (int e = 1; e <= d.deg(); ++e) {
      const auto& c = d.coeff(e);
      if (c.is_zero()) continue;
      if (!c.is_rational() || c.rational_part() > 0 || c.rational_part().get_den() != 1) return false;
    }
    return true;
  }
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (!looks_regular(default_)) w.push_back("nu default " + default_text_ + " is not recognisably in 1+qZ>=0[[q]]");
    for (auto& [k, v] : overrides_)
      if (!looks_regular(v.first))
        w.push_back("nu override " + v.second + " is not recognisably in 1+qZ>=0[[q]]");
    return w;
  }

 private:
  RatFunc default_;
  std::string default_text_;
  std::map<std::pair<int, int>, std::pair<RatFunc, std::string>> overrides_;
};

// Lusztig's form on F, computed on words by recursion on the first letter
// of the second argument and memoized per word pair.
class LusztigForm {
 public:
  LusztigForm(Datum d, NuAssignment nu, int max_height = 1 << 20)
      : d_(std::move(d)), nu_(std::move(nu)), max_height_(max_height) {}

  const Datum& datum() const { return d_; }
  const NuAssignment& nu() const { return nu_; }
  int max_height() const { return max_height_; }

  void check_height(const RootVector& a) const {
    if (height(a) > max_height_)
      throw HeightBoundExceeded("height " + std::to_string(height(a)) + " exceeds bound " +
                                std::to_string(max_height_));
  }

  // (f_{i,c}, f_{il})
  RatFunc single_letter_pairing(int i, const Parts& c) const {
    RatFunc v(1);
    int e = 0, tail = size_of(c);
    for (int p : c) {
      v *= nu_.value(i, p);
      tail -= p;
      e += p * tail;
    }
    return v * RatFunc::q_pow(-d_.qparen_exp(i) * e);
  }

  RatFunc pair(const Word& x, const Word& y) const {
    if (x.empty() || y.empty()) return RatFunc(x.empty() && y.empty() ? 1 : 0);
    if (weight_of(d_, x) != weight_of(d_, y)) return RatFunc();
    check_height(weight_of(d_, x));
    {
      std::lock_guard<std::mutex> g(memo_->mu);
      auto it = memo_->table.find({x, y});
      if (it != memo_->table.end()) return it->second;
    }
    RatFunc v = compute(x, y);
    std::lock_guard<std::mutex> g(memo_->mu);
    memo_->table.emplace(std::make_pair(x, y), v);
    return v;
  }

  RatFunc pair(const FreeElement& x, const FreeElement& y) const {
    RatFunc s;
    for (auto& [a, c] : x.terms())
      for (auto& [b, e] : y.terms()) {
        RatFunc p = pair(a, b);
        if (!p.is_zero()) s += c * e * p;
      }
    return s;
  }

  // Pairing on F (x) F: (x1 (x) x2, y1 (x) y2) = (x1,y1)(x2,y2).
  RatFunc pair(const TensorElement& x, const TensorElement& y) const {
    RatFunc s;
    for (auto& [a, c] : x.terms())
      for (auto& [b, e] : y.terms()) {
        RatFunc p = pair(a.first, b.first);
        if (p.is_zero()) continue;
        p *= pair(a.second, b.second);
        if (!p.is_zero()) s += c * e * p;
      }
    return s;
  }

  Matrix<RatFunc> gram(const std::vector<Word>& rows, const std::vector<Word>& cols) const {
    Matrix<RatFunc> g(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) g(a, b) = pair(rows[a], cols[b]);
    return g;
  }
  Matrix<RatFunc> gram_matrix(const RootVector& alpha) const {
    check_height(alpha);
    auto w = words_of_weight(d_, alpha);
    return gram(w, w);
  }

  bool radical_contains(const FreeElement& x) const {
    if (x.is_zero()) return true;
    RootVector a = weight_of(d_, x.terms().begin()->first);
    check_height(a);
    for (auto& w : words_of_weight(d_, a)) {
      RatFunc s;
      for (auto& [u, c] : x.terms()) s += c * pair(u, w);
      if (!s.is_zero()) return false;
    }
    return true;
  }

  std::size_t memo_size() const {
    std::lock_guard<std::mutex> g(memo_->mu);
    return memo_->table.size();
  }

 private:
  // (x, f_il y') = sum over splits of x with left factor f_{i,c}, |c| = l.
  RatFunc compute(const Word& x, const Word& y) const {
    const int i = y[0].index, l = y[0].level;
    const Word rest(y.begin() + 1, y.end());
    const int qp = d_.qparen_exp(i);
    RatFunc total;
    // acc = sum over earlier letters k of s_k (alpha_{j_k}, alpha_i)
    auto rec = [&](auto&& self, std::size_t k, int remaining, int acc, int twist, Parts& c, Word& right) -> void {
      if (k == x.size()) {
        if (remaining != 0) return;
        RatFunc v = single_letter_pairing(i, c);
        RatFunc r = pair(right, rest);
        if (r.is_zero()) return;
        total += RatFunc::q_pow(twist) * v * r;
        return;
      }
      const Letter& a = x[k];
      int maxp = a.index == i ? std::min(a.level, remaining) : 0;
      for (int pk = 0; pk <= maxp; ++pk) {
        int sk = a.level - pk;
        int tw = twist - qp * pk * sk - acc * pk;
        if (pk > 0) c.push_back(pk);
        if (sk > 0) right.push_back({a.index, sk});
        self(self, k + 1, remaining - pk, acc + sk * d_.pair(a.index, i), tw, c, right);
        if (sk > 0) right.pop_back();
        if (pk > 0) c.pop_back();
      }
    };
    Parts c;
    Word right;
    rec(rec, 0, l, 0, 0, c, right);
    return total;
  }

  struct Memo {
    std::mutex mu;
    std::map<std::pair<Word, Word>, RatFunc> table;
  };

  Datum d_;
  NuAssignment nu_;
  int max_height_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

}  // namespace qbb
