#pragma once

#include "central_charge.hpp"

#include <optional>
#include <utility>

namespace bridgeland {

// coordinates (r, c1..., s)
inline NSClass to_coords(const MukaiVector& v) {
  NSClass x{v.r};
  x.insert(x.end(), v.c1.begin(), v.c1.end());
  x.push_back(v.s);
  return x;
}

inline MukaiVector from_coords(const NSClass& x) {
  return {x.front(), NSClass(x.begin() + 1, x.end() - 1), x.back()};
}

// Gram matrix of the Mukai pairing on (r, c1, s)
inline Matrix mukai_gram(const SurfaceData& S) {
  std::size_t n = S.rho() + 2;
  Matrix J(n, std::vector<Q>(n, Q(0)));
  J[0][n - 1] = J[n - 1][0] = -1;
  for (std::size_t i = 0; i < S.rho(); ++i)
    for (std::size_t j = 0; j < S.rho(); ++j) J[i + 1][j + 1] = S.gram[i][j];
  return J;
}

inline bool preserves_pairing(const Matrix& M, const Matrix& Jsrc, const Matrix& Jdst) {
  return mat_mul(mat_mul(transpose(M), Jdst), M) == Jsrc;
}

struct MukaiIsometry {
  Matrix matrix;
  BetaFrame source;
  BetaFrame target;  // polarised by Ĥ = hat(H)
  Z r0;
  Matrix hat;
  bool omega_hat_nef = false;  // asserted by the caller; lattice data cannot decide it

  MukaiVector apply(const MukaiVector& v) const {
    check_dims(v, source.surface);
    return from_coords(mat_vec(matrix, to_coords(v)));
  }
};

// target surface: same ε, Gram of NS(X′), polarisation Ĥ = hat(H)
inline MukaiIsometry fm_build(const Z& r0, const SurfaceData& S, const NSClass& beta, const Matrix& target_gram,
                              const NSClass& beta_prime, const Matrix& hat) {
  validate(S);
  std::size_t n = S.rho();
  if (r0 < 1) throw UserError("r0 must be >= 1");
  if (beta.size() != n || beta_prime.size() != target_gram.size())
    throw UserError("beta / beta' have wrong NS dimension");
  if (hat.size() != target_gram.size() || (n && hat[0].size() != n))
    throw UserError("hat map has wrong shape");
  for (auto& row : hat)
    if (row.size() != n) throw UserError("hat map has wrong shape");
  if (mat_mul(mat_mul(transpose(hat), target_gram), hat) != S.gram)
    throw UserError("hat map is not an isometry of the NS forms");

  MukaiIsometry iso;
  iso.r0 = r0;
  iso.hat = hat;
  iso.source = frame_constants(S, beta);
  SurfaceData T{S.epsilon, target_gram, mat_vec(hat, S.H)};
  iso.target = frame_constants(T, beta_prime);

  std::size_t m = n + 2;
  Matrix src(m, std::vector<Q>(m)), img(m, std::vector<Q>(m));
  auto put = [&](Matrix& A, std::size_t col, const MukaiVector& v) {
    auto x = to_coords(v);
    for (std::size_t i = 0; i < m; ++i) A[i][col] = x[i];
  };
  const auto& Tp = iso.target.surface;
  Q rq(r0);
  put(src, 0, exp_beta(beta, S));
  put(img, 0, (1 / rq) * rho_class(Tp.rho()));
  put(src, 1, rho_class(n));
  put(img, 1, rq * exp_beta(beta_prime, Tp));
  for (std::size_t j = 0; j < n; ++j) {
    NSClass e = zero_class(n);
    e[j] = 1;
    put(src, j + 2, {0, e, S.form(e, beta)});
    NSClass c;
    for (auto& row : hat) c.push_back(row[j]);
    put(img, j + 2, {0, -c, -Tp.form(c, beta_prime)});
  }
  iso.matrix = mat_mul(img, inverse(src));
  if (!preserves_pairing(iso.matrix, mukai_gram(S), mukai_gram(Tp)))
    throw UserError("Fourier-Mukai data does not preserve the Mukai pairing");
  return iso;
}

// composite of raw isometries (first a, then b)
inline Matrix compose(const Matrix& a, const Matrix& b) { return mat_mul(b, a); }

// v(Φ(E)[1]) = −Φ(v)
inline MukaiVector fm_image_shift(const MukaiIsometry& iso, const MukaiVector& v) { return -iso.apply(v); }

// parameter map (β+η, ω) ↦ (β′+η̃, ω̃); eta in the output is absolute in the target frame
inline StabilityPoint param_transform(const MukaiIsometry& iso, const StabilityPoint& p) {
  const auto& F = iso.source;
  check_point(p, F);
  NSClass off = p.eta - F.eta_beta;
  Q sq = F.surface.sq(off) - p.s;  // ((η+iω)²) < 0
  Q f = -2 / (Q(iso.r0) * sq);
  NSClass eta_t = f * mat_vec(iso.hat, off);
  return {iso.target.eta_beta + eta_t, f * f * p.s};
}

// the scale factor −2/(r0((η+iω)²))
inline Q param_factor(const MukaiIsometry& iso, const StabilityPoint& p) {
  NSClass off = p.eta - iso.source.eta_beta;
  return -2 / (Q(iso.r0) * (iso.source.surface.sq(off) - p.s));
}

// (Z′(Φ(v)[1]) at the transformed point, factor·Z(v)); imaginary parts in units of (H,ω)
inline std::pair<CentralValue, CentralValue> charge_commutation_check(const MukaiIsometry& iso, const MukaiVector& v,
                                                                      const StabilityPoint& p) {
  Q f = param_factor(iso, p);
  StabilityPoint q = param_transform(iso, p);
  CentralValue zt = central_charge(fm_image_shift(iso, v), iso.target, q);
  CentralValue z = central_charge(v, iso.source, p);
  // (Ĥ, ω̃) = f (H, ω) because hat is an isometry and f > 0
  CentralValue lhs{zt.re, zt.im_coeff * f};
  CentralValue rhs{f * z.re, f * z.im_coeff};
  return {lhs, rhs};
}

// Φ_𝔥 for the reflection in u ∈ 𝔯: (η, s) ↦ (g(η−υ)+υ, g² s), g = 2/(r²(s−((η−υ)²)))
inline StabilityPoint reflection_param(const MukaiVector& u, const StabilityPoint& p, const BetaFrame& F) {
  const auto& S = F.surface;
  check_point(p, F);
  if (u.r <= 0) throw UserError("reflection_param needs rk u > 0");
  if (mukai_sq(u, S) != -2) throw UserError("reflection_param needs <u^2> = -2");
  if (S.form(u.c1, S.H) != u.r * F.b * S.H2())
    throw UserError("c1(u)/rk u does not lie on the slice bH + H^perp");
  NSClass ups = (1 / u.r) * S.perp(u.c1);
  NSClass rel = p.eta - ups;
  Q g = 2 / (u.r * u.r * (p.s - S.sq(rel)));
  return {g * rel + ups, g * g * p.s};
}

// x = r + ξ + aϱ with ξ = ξ_re + iω, (ξ_re, H) = 0, (ω²) = s_im
struct SphereChart {
  bool at_infinity = false;
  NSClass X_re;
  Q X_im_sq;  // ((Im X)²)
  Q Y;
};

inline SphereChart sphere_embed(const Q& r, const NSClass& xi_re, const Q& s_im, const Q& a, const SurfaceData& S) {
  if (xi_re.size() != S.rho()) throw UserError("xi has wrong NS dimension");
  if (S.form(xi_re, S.H) != 0) throw UserError("real part of xi must be orthogonal to H");
  if (s_im < 0) throw UserError("(omega^2) must be non-negative");
  if (S.sq(xi_re) - s_im - 2 * r * a != 0) throw UserError("sphere_embed needs <x^2> = 0");
  Q den = r - 2 * a;
  if (den == 0) throw UserError("sphere_embed: r = 2a is outside the chart");
  SphereChart c;
  if (r == 0) {
    // x ∈ Rϱ
    c.at_infinity = true;
    return c;
  }
  c.X_re = (-2 / den) * xi_re;
  c.X_im_sq = 4 * s_im / (den * den);
  c.Y = (2 * a + r) / (2 * a - r);
  if (-(S.sq(c.X_re) - c.X_im_sq) + c.Y * c.Y != 1) throw InvariantError("sphere relation fails");
  return c;
}

}  // namespace bridgeland
