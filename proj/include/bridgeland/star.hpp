#pragma once

#include "mukai.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bridgeland {

struct StarWitness {
  Q r1, d1, a1;
  Q neg_D1_sq_bound;  // largest −(D1²) compatible with ⟨v1²⟩ ≥ −2ε
  bool operator==(const StarWitness&) const = default;
};

struct StarReport {
  std::string condition;  // star1, star2, star3
  bool holds = true;
  std::vector<StarWitness> witnesses;
  std::optional<Q> threshold_s;
  std::string note;
};

inline constexpr const char* kLatticeNote = "lattice-level check; realizability of violating classes is not verified";

namespace detail {

inline void star_finish(StarReport& rep) {
  rep.holds = rep.witnesses.empty();
  if (!rep.holds) rep.note = kLatticeNote;
}

// is d1 + r1 b ∈ δZ (c1 with the required degree exists)?
inline bool degree_attainable(const Q& d1, const Q& r1, const BetaFrame& F) {
  return is_int((d1 + r1 * F.b) / F.delta);
}

inline Q largest_grid_le(const Q& x, const Z& r0) {
  Q g(floor_q(x * Q(r0)), r0);
  g.canonicalize();
  return g;
}

}  // namespace detail

inline MukaiVector dual(const MukaiVector& v) { return {v.r, -v.c1, v.s}; }

// sufficient bound: s > star1_threshold ⇒ (★1)
inline Q star1_threshold(const MukaiVector& v, const BetaFrame& F) {
  const auto& S = F.surface;
  auto x = beta_decompose(v, F);
  if (x.d <= 0) throw UserError("star1_threshold needs d > 0");
  if (x.r < 0) throw UserError("star1_threshold needs r >= 0");
  Q eps(S.epsilon), v2 = mukai_sq(v, S), D2 = S.sq(x.D);
  Q t;
  if (x.r > 0) {
    Q a = x.d * eps, b = x.d * eps + (x.d - F.d_min) / (2 * x.r) * (v2 - D2);
    t = a > b ? a : b;
  } else {
    t = x.d * eps + (x.d - F.d_min) / 2 * (v2 - D2) + x.d * abs_q(x.a);
  }
  return 2 / F.delta * t;
}

// (★1): for every (r1, d1, a1) with 0 < d1 < d and dr1 − d1r > 0:
//       (dr1 − d1r) s/2 − (d a1 − d1 a) > 0
inline StarReport check_star1(const MukaiVector& v, const BetaFrame& F, const Q& s) {
  const auto& S = F.surface;
  auto x = beta_decompose(v, F);
  if (x.d <= 0) throw UserError("star1 needs d > 0");
  if (x.r < 0) throw UserError("star1 needs r >= 0");
  if (s <= 0) throw UserError("s must be positive");
  StarReport rep;
  rep.condition = "star1";
  rep.threshold_s = star1_threshold(v, F);
  Q H2 = S.H2(), eps(S.epsilon);
  for (Q d1 = F.d_min; d1 < x.d; d1 += F.d_min) {
    Q umax = (d1 * d1 * H2 + 2 * eps) / 2;
    Z rmax = floor_q(d1 * x.r / x.d + 2 * (umax - d1 * x.a / x.d) / s);
    for (Z r1z = 1; r1z <= rmax; ++r1z) {
      Q r1(r1z);
      if (!detail::degree_attainable(d1, r1, F)) continue;
      Q X = x.d * r1 - d1 * x.r;
      if (X <= 0) continue;
      Q L = (X * s / 2 + d1 * x.a) / x.d;
      Q U = umax / r1;
      Q a1 = detail::largest_grid_le(U, F.r0);
      if (a1 < L) continue;
      rep.witnesses.push_back({r1, d1, a1, d1 * d1 * H2 - 2 * r1 * a1 + 2 * eps});
    }
  }
  detail::star_finish(rep);
  return rep;
}

// (★2) for v is (★1) for v^∨ in the frame at −β; witnesses are reported for v (d1 ↦ −d1)
inline StarReport check_star2(const MukaiVector& v, const BetaFrame& F, const Q& s) {
  auto x = beta_decompose(v, F);
  if (x.d >= 0) throw UserError("star2 needs d < 0");
  if (x.r < 0) throw UserError("star2 needs r >= 0");
  BetaFrame G = frame_constants(F.surface, -F.beta);
  StarReport rep = check_star1(dual(v), G, s);
  rep.condition = "star2";
  for (auto& w : rep.witnesses) w.d1 = -w.d1;
  return rep;
}

// (★3): for d ≤ d1 ≤ 0, r1 ≥ 1 with dr1 − d1r ≤ 0:
//       (dr1 − d1r) s/2 − (d a1 − d1 a) ≤ 0, strictly when dr1 − d1r < 0
inline StarReport check_star3(const MukaiVector& v, const BetaFrame& F, const Q& s) {
  const auto& S = F.surface;
  auto x = beta_decompose(v, F);
  if (x.d >= 0) throw UserError("star3 needs d < 0");
  if (x.r < 0) throw UserError("star3 needs r >= 0");
  if (s <= 0) throw UserError("s must be positive");
  StarReport rep;
  rep.condition = "star3";
  Q H2 = S.H2(), eps(S.epsilon);
  // the r1 bound below is affine in d1 ∈ [d, 0] and umax peaks at d1 = d
  Q edge = x.r * s / 2 - x.a;
  Q worst = (x.d * x.d * H2 + 2 * eps) / 2 + (edge > 0 ? edge : Q(0));
  Z rmax = floor_q(2 * worst / s);
  for (Z r1z = 1; r1z <= rmax; ++r1z) {
    Q r1(r1z);
    Q start = x.d + r1 * F.b;
    start = Q(ceil_q(start / F.delta)) * F.delta - r1 * F.b;
    for (Q d1 = start; d1 <= 0; d1 += F.delta) {
      Q umax = (d1 * d1 * H2 + 2 * eps) / 2;
      if (r1 * s / 2 > umax + d1 * x.r * s / (2 * x.d) - d1 * x.a / x.d) continue;
      Q X = x.d * r1 - d1 * x.r;
      if (X > 0) continue;
      Q L = (X * s / 2 + d1 * x.a) / x.d;
      Q U = umax / r1;
      Q a1 = detail::largest_grid_le(U, F.r0);
      bool bad = X < 0 ? a1 >= L : a1 > L;
      if (bad) rep.witnesses.push_back({r1, d1, a1, d1 * d1 * H2 - 2 * r1 * a1 + 2 * eps});
    }
  }
  detail::star_finish(rep);
  return rep;
}

inline std::string gieseker_report(const MukaiVector& v, const BetaFrame& F, const Q& s) {
  auto x = beta_decompose(v, F);
  std::string out;
  auto line = [&](const std::string& t) { out += t + "\n"; };
  line("v = " + to_str(v) + ", s = (omega^2) = " + to_str(s) + ", r = " + to_str(x.r) + ", d = " + to_str(x.d));
  if (x.r < 0 || x.d == 0) {
    line("no large-volume statement applies (needs r >= 0 and d != 0)");
    return out;
  }
  if (x.d > 0) {
    Q t = star1_threshold(v, F);
    auto rep = check_star1(v, F, s);
    line("star1 threshold s* = " + to_str(t));
    if (x.d == F.d_min) line("d = d_min: star1 holds for every s");
    line(std::string("star1 ") + (rep.holds ? "holds" : "fails") + " at s");
    if (rep.holds)
      line("=> beta-twisted Gieseker semistable <=> Bridgeland semistable in the tilted heart A^mu");
    else
      line("(" + std::string(kLatticeNote) + ")");
    if (F.surface.epsilon == 1 && s > 2 && rep.holds) line("s > 2 on a K3: the category chamber is A^mu");
  } else {
    auto r2 = check_star2(v, F, s);
    auto r3 = check_star3(v, F, s);
    line(std::string("star2 ") + (r2.holds ? "holds" : "fails") + ", star3 " + (r3.holds ? "holds" : "fails"));
    if (r2.holds) line("=> (-beta)-twisted semistable objects of the dual category correspond");
    if (r3.holds) line("=> E[1] semistable for the transformed heart");
    if (!r2.holds || !r3.holds) line("(" + std::string(kLatticeNote) + ")");
  }
  return out;
}

}  // namespace bridgeland
