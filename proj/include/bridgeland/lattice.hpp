#pragma once

#include "rational.hpp"

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

namespace bridgeland {

using NSClass = std::vector<Q>;
using Matrix = std::vector<std::vector<Q>>;

inline NSClass zero_class(std::size_t n) { return NSClass(n, Q(0)); }

inline NSClass operator+(const NSClass& a, const NSClass& b) {
  NSClass c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}
inline NSClass operator-(const NSClass& a, const NSClass& b) {
  NSClass c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}
inline NSClass operator-(const NSClass& a) {
  NSClass c(a);
  for (auto& x : c) x = -x;
  return c;
}
inline NSClass operator*(const Q& t, const NSClass& a) {
  NSClass c(a);
  for (auto& x : c) x *= t;
  return c;
}

inline bool is_zero(const NSClass& a) {
  return std::all_of(a.begin(), a.end(), [](const Q& x) { return x == 0; });
}
inline bool is_integral(const NSClass& a) {
  return std::all_of(a.begin(), a.end(), [](const Q& x) { return is_int(x); });
}

inline Q bilinear(const Matrix& g, const NSClass& x, const NSClass& y) {
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  }
  return s;
}

inline NSClass mat_vec(const Matrix& m, const NSClass& x) {
  NSClass y = zero_class(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, std::vector<Q>(m, Q(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), std::vector<Q>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Gauss-Jordan; throws on singular input
inline Matrix inverse(Matrix a) {
  std::size_t n = a.size();
  Matrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw UserError("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Q piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

struct Signature {
  int pos = 0, neg = 0, zero = 0;
};

// symmetric congruence diagonalisation over Q
inline Signature signature(Matrix a) {
  std::size_t n = a.size();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][p] == 0) ++p;
    if (p == n) {
      // all remaining diagonal entries vanish; look for an off-diagonal one
      std::size_t i0 = n, j0 = n;
      for (std::size_t i = k; i < n && i0 == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            i0 = i;
            j0 = j;
            break;
          }
      if (i0 == n) {
        sig.zero += int(n - k);
        return sig;
      }
      // row/col i0 += row/col j0 makes a[i0][i0] = 2 a[i0][j0] != 0
      for (std::size_t j = 0; j < n; ++j) a[i0][j] += a[j0][j];
      for (std::size_t i = 0; i < n; ++i) a[i][i0] += a[i][j0];
      p = i0;
    }
    if (p != k) {
      std::swap(a[p], a[k]);
      for (auto& row : a) std::swap(row[p], row[k]);
    }
    Q piv = a[k][k];
    (piv > 0 ? sig.pos : sig.neg)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Q f = a[i][k] / piv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
    }
  }
  return sig;
}

struct SurfaceData {
  int epsilon = 1;  // 1: K3, 0: abelian
  Matrix gram;
  NSClass H;

  std::size_t rho() const { return gram.size(); }
  Q form(const NSClass& x, const NSClass& y) const { return bilinear(gram, x, y); }
  Q sq(const NSClass& x) const { return form(x, x); }
  Q H2() const { return sq(H); }
  // component of x orthogonal to H
  NSClass perp(const NSClass& x) const { return x - (form(x, H) / H2()) * H; }
};

// Structural checks; `strict` adds the integrality requirements for user input.
inline void validate(const SurfaceData& s, bool strict = true) {
  std::size_t n = s.gram.size();
  if (n == 0) throw UserError("empty Gram matrix");
  if (s.epsilon != 0 && s.epsilon != 1) throw UserError("epsilon must be 0 or 1");
  for (auto& row : s.gram)
    if (row.size() != n) throw UserError("Gram matrix is not square");
  if (s.H.size() != n) throw UserError("H has wrong length");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (s.gram[i][j] != s.gram[j][i]) throw UserError("Gram matrix is not symmetric");
      if (strict && !is_int(s.gram[i][j])) throw UserError("Gram matrix must be integral");
    }
  if (strict && !is_integral(s.H)) throw UserError("H must be integral");
  Q h2 = s.H2();
  if (h2 <= 0) throw UserError("(H^2) must be positive");
  if (strict && !(is_int(h2) && Z(h2.get_num() % 2) == 0))
    throw UserError("(H^2) must be an even integer");
  Signature sig = signature(s.gram);
  if (sig.zero != 0) throw UserError("degenerate Gram matrix (signature has a zero part)");
  if (sig.pos != 1)
    throw UserError("bad signature: Gram matrix must have exactly one positive eigenvalue, found " +
                    std::to_string(sig.pos));
}

// Integer basis of {x in Z^n : h.x = 0} for an integer row vector h, plus a
// particular solution x0 with h.x0 = g = gcd(h).
struct KernelData {
  std::vector<NSClass> basis;
  NSClass x0;
  Z g;
};

inline KernelData integer_kernel(const std::vector<Z>& h) {
  std::size_t n = h.size();
  // U unimodular with h U = (0,..,0,g,0..); column operations tracked in U
  std::vector<Z> row(h);
  std::vector<std::vector<Z>> U(n, std::vector<Z>(n, 0));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
  auto colop = [&](std::size_t i, std::size_t j, const Z& f) {  // col_i -= f col_j
    row[i] -= f * row[j];
    for (std::size_t k = 0; k < n; ++k) U[k][i] -= f * U[k][j];
  };
  auto colswap = [&](std::size_t i, std::size_t j) {
    std::swap(row[i], row[j]);
    for (std::size_t k = 0; k < n; ++k) std::swap(U[k][i], U[k][j]);
  };
  // Euclid across all columns into column 0
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (row[i] != 0 && (piv == n || abs(row[i]) < abs(row[piv]))) piv = i;
    if (piv == n) break;
    if (piv != 0) colswap(0, piv);
    bool done = true;
    for (std::size_t i = 1; i < n; ++i) {
      if (row[i] == 0) continue;
      Z f;
      mpz_fdiv_q(f.get_mpz_t(), row[i].get_mpz_t(), row[0].get_mpz_t());
      colop(i, 0, f);
      if (row[i] != 0) done = false;
    }
    if (done) break;
  }
  KernelData kd;
  kd.g = row[0];
  if (kd.g < 0) {
    kd.g = -kd.g;
    for (std::size_t k = 0; k < n; ++k) U[k][0] = -U[k][0];
  }
  kd.x0 = zero_class(n);
  for (std::size_t k = 0; k < n; ++k) kd.x0[k] = Q(U[k][0]);
  for (std::size_t i = 1; i < n; ++i) {
    NSClass b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = Q(U[k][i]);
    kd.basis.push_back(b);
  }
  return kd;
}

// {base + sum k_i gens_i : k in Z^m}
struct AffineCoset {
  NSClass base;
  std::vector<NSClass> gens;
};

// NS ∩ H^⊥ and the integral solutions of (c, H) = t.
struct HPerpLattice {
  std::vector<NSClass> basis;  // integral basis of NS ∩ H^⊥
  NSClass x0;                  // integral class with (x0, H) = gH
  Q gH;                        // generator of (NS, H) ⊂ Q

  // integral c with (c,H) = t, as an affine coset; empty optional when none
  bool solve(const Q& t, AffineCoset& out) const {
    Q k = t / gH;
    if (!is_int(k)) return false;
    out.base = k * x0;
    out.gens = basis;
    return true;
  }
};

inline HPerpLattice h_perp_lattice(const SurfaceData& s) {
  NSClass gh = mat_vec(s.gram, s.H);
  Z den = 1;
  for (auto& x : gh) den = lcm_z(den, x.get_den());
  std::vector<Z> hz;
  for (auto& x : gh) hz.push_back(Q(x * den).get_num());
  KernelData kd = integer_kernel(hz);
  HPerpLattice L;
  L.basis = kd.basis;
  L.x0 = kd.x0;
  L.gH = Q(kd.g, den);
  L.gH.canonicalize();
  return L;
}

// Fincke–Pohst on an affine coset: every x in the coset with -(x,x)_gram <= bound.
// The form must be negative definite on span(gens). Output sorted lexicographically.
inline std::vector<NSClass> short_vectors(const Matrix& gram, const Q& bound,
                                          const AffineCoset& coset) {
  std::size_t m = coset.gens.size();
  std::vector<NSClass> out;
  if (bound < 0) return out;
  if (m == 0) {
    if (-bilinear(gram, coset.base, coset.base) <= bound) out.push_back(coset.base);
    return out;
  }
  // positive definite M_ij = -(g_i, g_j), linear term m_i = -(g_i, base)
  Matrix M(m, std::vector<Q>(m));
  NSClass lin(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) M[i][j] = -bilinear(gram, coset.gens[i], coset.gens[j]);
    lin[i] = -bilinear(gram, coset.gens[i], coset.base);
  }
  Signature sig = signature(M);
  if (sig.pos != int(m))
    throw UserError("short_vectors: form is not negative definite on the coset directions");
  // q(k) = k^T M k + 2 lin.k + c0 ; center k* = -M^{-1} lin
  Q c0 = -bilinear(gram, coset.base, coset.base);
  NSClass kstar = -mat_vec(inverse(M), lin);
  Q cmin = c0 + bilinear(M, kstar, kstar) + 2 * [&] {
    Q t = 0;
    for (std::size_t i = 0; i < m; ++i) t += lin[i] * kstar[i];
    return t;
  }();
  Q budget = bound - cmin;
  if (budget < 0) return out;
  // LDL^T style: (y)^T M y = sum_i D_i (y_i + sum_{j>i} mu_ij y_j)^2
  Matrix mu(m, std::vector<Q>(m, Q(0)));
  NSClass D(m);
  {
    Matrix a = M;
    for (std::size_t i = 0; i < m; ++i) {
      D[i] = a[i][i];
      for (std::size_t j = i + 1; j < m; ++j) mu[i][j] = a[i][j] / D[i];
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = i + 1; k < m; ++k) a[j][k] -= mu[i][j] * a[i][k];
    }
  }
  std::vector<Z> k(m);
  std::function<void(std::ptrdiff_t, Q)> rec = [&](std::ptrdiff_t i, Q rem) {
    if (i < 0) {
      NSClass x = coset.base;
      for (std::size_t j = 0; j < m; ++j) x = x + Q(k[j]) * coset.gens[j];
      if (-bilinear(gram, x, x) <= bound) out.push_back(x);
      return;
    }
    // center of coordinate i given k_{>i}
    Q c = kstar[i];
    for (std::size_t j = i + 1; j < m; ++j) c -= mu[i][j] * (Q(k[j]) - kstar[j]);
    Z w = sqrt_ceil_bound(rem / D[i]);
    Z lo = ceil_q(c - Q(w)), hi = floor_q(c + Q(w));
    for (Z t = lo; t <= hi; ++t) {
      Q y = Q(t) - c;
      Q used = D[i] * y * y;
      if (used > rem) continue;
      k[i] = t;
      rec(i - 1, rem - used);
    }
  };
  rec(std::ptrdiff_t(m) - 1, budget);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bridgeland
