#pragma once

#include "rational.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace bridgeland {

// Σ c_e q^e with exact rational coefficients; zero coefficients are never stored
class LaurentPolyQ {
 public:
  LaurentPolyQ() = default;
  LaurentPolyQ(const Q& c) {  // NOLINT: constants convert implicitly
    if (c != 0) terms_[0] = c;
  }
  static LaurentPolyQ monomial(int e, const Q& c = 1) {
    LaurentPolyQ p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }
  static LaurentPolyQ q() { return monomial(1); }

  const std::map<int, Q>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Q coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Q(0) : it->second;
  }
  void add(int e, const Q& c) {
    Q& x = terms_[e];
    x += c;
    if (x == 0) terms_.erase(e);
  }

  LaurentPolyQ& operator+=(const LaurentPolyQ& o) {
    for (auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPolyQ& operator-=(const LaurentPolyQ& o) {
    for (auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend LaurentPolyQ operator+(LaurentPolyQ a, const LaurentPolyQ& b) { return a += b; }
  friend LaurentPolyQ operator-(LaurentPolyQ a, const LaurentPolyQ& b) { return a -= b; }
  friend LaurentPolyQ operator-(const LaurentPolyQ& a) { return LaurentPolyQ() - a; }
  friend LaurentPolyQ operator*(const LaurentPolyQ& a, const LaurentPolyQ& b) {
    LaurentPolyQ r;
    for (auto& [e1, c1] : a.terms_)
      for (auto& [e2, c2] : b.terms_) r.add(e1 + e2, c1 * c2);
    return r;
  }
  bool operator==(const LaurentPolyQ&) const = default;

  Q eval(const Q& x) const {
    Q s = 0;
    for (auto& [e, c] : terms_) {
      Q p = 1;
      for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= x;
      if (e < 0) s += c / p;
      else s += c * p;
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto [e, c] = *it;
      bool neg = c < 0;
      Q a = neg ? Q(-c) : c;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::string mono = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
      if (mono.empty()) out += to_str(a);
      else if (a == 1) out += mono;
      else out += to_str(a) + "*" + mono;
    }
    return out;
  }

 private:
  std::map<int, Q> terms_;
};

inline LaurentPolyQ pow(const LaurentPolyQ& p, int n) {
  LaurentPolyQ r(1);
  for (int i = 0; i < n; ++i) r = r * p;
  return r;
}

// Gaussian binomial via [n,m] = [n−1,m−1] + q^m [n−1,m]
inline LaurentPolyQ q_binomial(int n, int m) {
  if (n < 0 || m < 0) throw UserError("q_binomial needs non-negative arguments");
  if (m > n) throw UserError("q_binomial needs m <= n");
  std::vector<std::vector<LaurentPolyQ>> t(n + 1, std::vector<LaurentPolyQ>(n + 1));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = LaurentPolyQ(1);
    for (int j = 1; j <= i; ++j)
      t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? LaurentPolyQ::monomial(j) * t[i - 1][j] : LaurentPolyQ());
  }
  return t[n][m];
}

// #GL_N(F_q) = q^{N(N−1)/2} Π_{i=1}^{N} (q^i − 1)
inline LaurentPolyQ gl_count(int N) {
  if (N < 0) throw UserError("gl_count needs N >= 0");
  LaurentPolyQ r = LaurentPolyQ::monomial(N * (N - 1) / 2);
  for (int i = 1; i <= N; ++i) r = r * (LaurentPolyQ::monomial(i) - LaurentPolyQ(1));
  return r;
}

// formal Z[q^±]-linear combination of monomials in named atoms
class CountExpr {
 public:
  using Atoms = std::vector<std::string>;  // sorted multiset

  CountExpr() = default;
  CountExpr(const LaurentPolyQ& p) {  // NOLINT
    if (!p.is_zero()) terms_[{}] = p;
  }
  static CountExpr atom(const std::string& name) {
    CountExpr e;
    e.terms_[{name}] = LaurentPolyQ(1);
    return e;
  }

  const std::map<Atoms, LaurentPolyQ>& terms() const { return terms_; }
  bool is_numeric() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  LaurentPolyQ numeric() const {
    if (!is_numeric()) throw UserError("count expression still contains unknown atoms");
    return terms_.empty() ? LaurentPolyQ() : terms_.begin()->second;
  }

  CountExpr& operator+=(const CountExpr& o) {
    for (auto& [k, p] : o.terms_) add(k, p);
    return *this;
  }
  CountExpr& operator-=(const CountExpr& o) {
    for (auto& [k, p] : o.terms_) add(k, -p);
    return *this;
  }
  friend CountExpr operator+(CountExpr a, const CountExpr& b) { return a += b; }
  friend CountExpr operator-(CountExpr a, const CountExpr& b) { return a -= b; }
  friend CountExpr operator*(const CountExpr& a, const CountExpr& b) {
    CountExpr r;
    for (auto& [k1, p1] : a.terms_)
      for (auto& [k2, p2] : b.terms_) {
        Atoms k = k1;
        k.insert(k.end(), k2.begin(), k2.end());
        std::sort(k.begin(), k.end());
        r.add(k, p1 * p2);
      }
    return r;
  }
  bool operator==(const CountExpr&) const = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [k, p] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (auto& a : k) mono += (mono.empty() ? "" : "*") + a;
      if (mono.empty()) out += "(" + p.str() + ")";
      else if (p == LaurentPolyQ(1)) out += mono;
      else out += "(" + p.str() + ")*" + mono;
    }
    return out;
  }

 private:
  void add(const Atoms& k, const LaurentPolyQ& p) {
    LaurentPolyQ& x = terms_[k];
    x += p;
    if (x.is_zero()) terms_.erase(k);
  }
  std::map<Atoms, LaurentPolyQ> terms_;
};

}  // namespace bridgeland
