#pragma once

#include "lattice.hpp"

#include <ostream>
#include <string>

namespace bridgeland {

// x = r + c1 + s·ϱ
struct MukaiVector {
  Q r;
  NSClass c1;
  Q s;

  bool operator==(const MukaiVector&) const = default;
  auto operator<=>(const MukaiVector& o) const {
    if (auto c = cmp(r, o.r); c != 0) return c;
    // vectors on different lattices order by rank of NS first
    if (c1.size() != o.c1.size()) return c1.size() <=> o.c1.size();
    for (std::size_t i = 0; i < c1.size(); ++i)
      if (auto c = cmp(c1[i], o.c1[i]); c != 0) return c;
    return cmp(s, o.s);
  }
};

inline MukaiVector operator+(const MukaiVector& a, const MukaiVector& b) {
  return {a.r + b.r, a.c1 + b.c1, a.s + b.s};
}
inline MukaiVector operator-(const MukaiVector& a, const MukaiVector& b) {
  return {a.r - b.r, a.c1 - b.c1, a.s - b.s};
}
inline MukaiVector operator-(const MukaiVector& a) { return {-a.r, -a.c1, -a.s}; }
inline MukaiVector operator*(const Q& t, const MukaiVector& a) { return {t * a.r, t * a.c1, t * a.s}; }

inline bool is_zero(const MukaiVector& v) { return v.r == 0 && v.s == 0 && is_zero(v.c1); }
inline bool is_integral(const MukaiVector& v) { return is_int(v.r) && is_int(v.s) && is_integral(v.c1); }

inline std::string to_str(const MukaiVector& v) {
  std::string s = "(" + to_str(v.r) + ",[";
  for (std::size_t i = 0; i < v.c1.size(); ++i) s += (i ? "," : "") + to_str(v.c1[i]);
  return s + "]," + to_str(v.s) + ")";
}
inline std::ostream& operator<<(std::ostream& os, const MukaiVector& v) { return os << to_str(v); }

inline MukaiVector rho_class(std::size_t n) { return {0, zero_class(n), 1}; }

inline void check_dims(const MukaiVector& x, const SurfaceData& S) {
  if (x.c1.size() != S.rho()) throw UserError("Mukai vector has wrong NS dimension");
}

inline Q mukai_pairing(const MukaiVector& x, const MukaiVector& y, const SurfaceData& S) {
  check_dims(x, S);
  check_dims(y, S);
  return S.form(x.c1, y.c1) - x.r * y.s - x.s * y.r;
}

inline Q mukai_sq(const MukaiVector& x, const SurfaceData& S) { return mukai_pairing(x, x, S); }

inline MukaiVector exp_beta(const NSClass& beta, const SurfaceData& S) {
  return {1, beta, S.sq(beta) / 2};
}

// v = r e^β + a ϱ + (dH + D) + (dH + D, β) ϱ,   (D, H) = 0
struct BetaDecomposition {
  Q r, a, d;
  NSClass D;
  bool operator==(const BetaDecomposition&) const = default;
};

inline BetaDecomposition decompose_at(const MukaiVector& v, const NSClass& beta, const SurfaceData& S) {
  check_dims(v, S);
  BetaDecomposition dec;
  dec.r = v.r;
  dec.a = -mukai_pairing(exp_beta(beta, S), v, S);
  NSClass rest = v.c1 - v.r * beta;
  dec.d = S.form(rest, S.H) / S.H2();
  dec.D = rest - dec.d * S.H;
  return dec;
}

inline MukaiVector recompose_at(const BetaDecomposition& dec, const NSClass& beta, const SurfaceData& S) {
  if (S.form(dec.D, S.H) != 0) throw UserError("D is not orthogonal to H");
  NSClass mid = dec.d * S.H + dec.D;
  MukaiVector v = dec.r * exp_beta(beta, S);
  v.s += dec.a + S.form(mid, beta);
  v.c1 = v.c1 + mid;
  return v;
}

struct BetaFrame {
  SurfaceData surface;
  NSClass beta;
  Q b;             // (β,H)/(H²)
  NSClass eta_beta;  // β − bH
  Z r0, b0;
  Q d_min, delta;
  HPerpLattice L;
};

inline BetaFrame frame_constants(const SurfaceData& S, const NSClass& beta) {
  validate(S, false);
  if (beta.size() != S.rho()) throw UserError("beta has wrong NS dimension");
  BetaFrame F;
  F.surface = S;
  F.beta = beta;
  F.b = S.form(beta, S.H) / S.H2();
  F.eta_beta = beta - F.b * S.H;
  Z n = 1;
  for (auto& x : beta) n = lcm_z(n, x.get_den());
  n = lcm_z(n, Q(S.sq(beta) / 2).get_den());
  F.r0 = n;
  F.b0 = F.b.get_den();
  F.L = h_perp_lattice(S);
  F.delta = F.L.gH / S.H2();
  F.d_min = gcd_q(F.delta, F.b);
  return F;
}

inline BetaDecomposition beta_decompose(const MukaiVector& v, const BetaFrame& F) {
  return decompose_at(v, F.beta, F.surface);
}
inline MukaiVector beta_recompose(const BetaDecomposition& d, const BetaFrame& F) {
  return recompose_at(d, F.beta, F.surface);
}

// r ∈ Z, c1 ∈ NS, r0·a ∈ Z
inline bool is_beta_integral(const MukaiVector& v, const BetaFrame& F) {
  if (!is_int(v.r) || !is_integral(v.c1)) return false;
  return is_int(Q(F.r0) * beta_decompose(v, F).a);
}

inline MukaiVector reflect(const MukaiVector& u, const MukaiVector& x, const SurfaceData& S) {
  if (mukai_sq(u, S) != -2) throw UserError("reflect: u is not a (-2)-vector");
  return x + mukai_pairing(u, x, S) * u;
}

// v = l v' with v' primitive integral; returns (l, v')
inline std::pair<Z, MukaiVector> primitive_part(const MukaiVector& v) {
  if (!is_integral(v)) throw UserError("primitive_part: vector is not integral");
  Z g = abs(v.r.get_num());
  g = gcd_z(g, v.s.get_num());
  for (auto& x : v.c1) g = gcd_z(g, x.get_num());
  if (g == 0) throw UserError("primitive_part: zero vector");
  return {g, Q(1, g) * v};
}

// primitive integral generator of Q_{>0}·v with first nonzero coordinate positive
inline MukaiVector normalized_ray(const MukaiVector& v) {
  Z den = v.r.get_den();
  den = lcm_z(den, v.s.get_den());
  for (auto& x : v.c1) den = lcm_z(den, x.get_den());
  MukaiVector w = Q(den) * v;
  auto [l, p] = primitive_part(w);
  Q lead = p.r;
  for (std::size_t i = 0; lead == 0 && i < p.c1.size(); ++i) lead = p.c1[i];
  if (lead == 0) lead = p.s;
  return lead < 0 ? -p : p;
}

inline bool parallel(const MukaiVector& a, const MukaiVector& b) {
  if (is_zero(a) || is_zero(b)) return true;
  MukaiVector na = normalized_ray(a), nb = normalized_ray(b);
  return na == nb || na == -nb;
}

}  // namespace bridgeland
