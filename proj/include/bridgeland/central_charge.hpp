#pragma once

#include "mukai.hpp"

#include <compare>
#include <optional>

namespace bridgeland {

// (η, ω) with η ⊥ H absolute in NS_Q and s = (ω²). The point's β is bH + η.
struct StabilityPoint {
  NSClass eta;
  Q s;
  bool operator==(const StabilityPoint&) const = default;
};

inline void check_point(const StabilityPoint& p, const BetaFrame& F) {
  if (p.eta.size() != F.surface.rho()) throw UserError("eta has wrong NS dimension");
  if (F.surface.form(p.eta, F.surface.H) != 0) throw UserError("eta is not orthogonal to H");
  if (p.s <= 0) throw UserError("s = (omega^2) must be positive");
}

inline NSClass point_beta(const BetaFrame& F, const StabilityPoint& p) {
  return F.b * F.surface.H + p.eta;
}

// the frame's own β as a point with the given s
inline StabilityPoint frame_point(const BetaFrame& F, const Q& s) { return {F.eta_beta, s}; }

inline BetaDecomposition decompose_at(const MukaiVector& v, const BetaFrame& F, const StabilityPoint& p) {
  return decompose_at(v, point_beta(F, p), F.surface);
}

// Z = re + i·im_coeff·(H,ω)
struct CentralValue {
  Q re, im_coeff;
  bool operator==(const CentralValue&) const = default;
  bool is_zero() const { return re == 0 && im_coeff == 0; }
};

inline CentralValue operator+(const CentralValue& a, const CentralValue& b) {
  return {a.re + b.re, a.im_coeff + b.im_coeff};
}

inline CentralValue central_charge(const MukaiVector& v, const BetaFrame& F, const StabilityPoint& p) {
  check_point(p, F);
  auto dec = decompose_at(v, F, p);
  return {-dec.a + dec.r * p.s / 2, dec.d};
}

// sign of Σ(v, v1): ≥ 0 iff φ(v1) ≥ φ(v) for d, d1 > 0
inline Q sigma_bracket(const MukaiVector& v, const MukaiVector& v1, const BetaFrame& F,
                       const StabilityPoint& p) {
  auto x = decompose_at(v, F, p), y = decompose_at(v1, F, p);
  return (x.r * y.d - y.r * x.d) * p.s / 2 - (x.a * y.d - y.a * x.d);
}

namespace detail {
// 0: phase in (0,1), 1: phase 1, 2: phase in (1,2), 3: phase 2
inline int sector(const CentralValue& z) {
  if (z.im_coeff > 0) return 0;
  if (z.im_coeff == 0) return z.re < 0 ? 1 : 3;
  return 2;
}
}  // namespace detail

inline std::strong_ordering phase_cmp(const CentralValue& z1, const CentralValue& z2) {
  if (z1.is_zero() || z2.is_zero()) throw UserError("phase of a zero central charge is undefined");
  int s1 = detail::sector(z1), s2 = detail::sector(z2);
  if (s1 != s2) return s1 <=> s2;
  if (s1 == 1 || s1 == 3) return std::strong_ordering::equal;
  // same open half plane: counter-clockwise from z1 to z2 means larger phase
  Q cross = z1.re * z2.im_coeff - z1.im_coeff * z2.re;
  if (cross > 0) return std::strong_ordering::less;
  if (cross < 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline MukaiVector xi_vector(const MukaiVector& v, const BetaFrame& F, const StabilityPoint& p) {
  const auto& S = F.surface;
  NSClass beta = point_beta(F, p);
  auto dec = decompose_at(v, beta, S);
  if (dec.d == 0) throw UserError("xi_vector needs d != 0");
  MukaiVector w = exp_beta(beta, S);
  w.s -= p.s / 2;
  MukaiVector h{0, S.H, S.form(S.H, beta)};
  Q c = mukai_pairing((1 / dec.d) * v, w, S) / S.H2();
  return w - c * h;
}

struct EtaReport {
  Q r;
  Q neg_eta_sq;        // −(η′²)
  Q ass_eta_bound;     // min{r² s²/8, s}
  bool ass_eta;
  Q eta_ss_bound;      // 1/(2 r0² r⁵)
  bool eta_ss;
  std::optional<Q> z_shift;  // (η′,D) − (η′²) r/2, when a vector is given
};

// r defaults to rk v; the Z shift needs v
inline EtaReport eta_smallness(const std::optional<MukaiVector>& v, std::optional<Q> r,
                               const NSClass& eta_prime, const BetaFrame& F, const StabilityPoint& p) {
  const auto& S = F.surface;
  check_point(p, F);
  if (S.form(eta_prime, S.H) != 0) throw UserError("eta' is not orthogonal to H");
  if (!r) {
    if (!v) throw UserError("eta_smallness needs a rank or a Mukai vector");
    r = v->r;
  }
  EtaReport rep;
  rep.r = *r;
  rep.neg_eta_sq = -S.sq(eta_prime);
  Q a = rep.r * rep.r * p.s * p.s / 8;
  rep.ass_eta_bound = a < p.s ? a : p.s;
  rep.ass_eta = rep.neg_eta_sq < rep.ass_eta_bound;
  if (rep.r > 0) {
    Q r5 = rep.r * rep.r * rep.r * rep.r * rep.r;
    rep.eta_ss_bound = 1 / (2 * Q(F.r0 * F.r0) * r5);
    rep.eta_ss = rep.neg_eta_sq < rep.eta_ss_bound;
  } else {
    rep.eta_ss_bound = 0;
    rep.eta_ss = false;
  }
  if (v) {
    auto dec = decompose_at(*v, F, p);
    rep.z_shift = S.form(eta_prime, dec.D) - S.sq(eta_prime) * dec.r / 2;
  }
  return rep;
}

}  // namespace bridgeland
