#pragma once

#include "laurent.hpp"
#include "walls.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bridgeland {

enum class Side { Minus, Plus };

inline std::string side_name(Side s) { return s == Side::Minus ? "minus" : "plus"; }

struct Decomposition {
  std::vector<MukaiVector> parts;  // ordered by decreasing phase on this side
  Side side;
  StabilityPoint point;
  std::optional<std::size_t> zero_part;  // index of the Z = 0 part, if any
};

struct WallDecompositions {
  std::vector<Decomposition> tuples;
  std::vector<std::vector<MukaiVector>> s_equivalent;  // multisets with equal-phase parts
};

namespace detail {

struct Part {
  MukaiVector v;
  Q d;
  Q chain;  // ⟨v²⟩/d + 2dε/d_min²
};

inline Q chain_term(const Q& sq, const Q& d, const BetaFrame& F) {
  return sq / d + 2 * d * Q(F.surface.epsilon) / (F.d_min * F.d_min);
}

// integral classes w with d(w) ∈ (0, dmax], Z(w) ∈ R_{>0}·Z(v) at p, Bogomolov, and chain term ≤ budget
inline std::vector<Part> aligned_parts(const Q& kappa, const Q& dmax, const Q& budget, const BetaFrame& F,
                                       const StabilityPoint& p) {
  const auto& S = F.surface;
  NSClass beta = point_beta(F, p);
  Q H2 = S.H2(), eps(S.epsilon), s = p.s;
  std::vector<Part> out;
  for (Q d = F.d_min; d <= dmax; d += F.d_min) {
    Q bog = 2 * (d / F.d_min) * (d / F.d_min) * eps;
    Q c = kappa * d / s;
    Q rad = (d * d * H2 + bog) / s + c * c;
    Z w = sqrt_ceil_bound(rad);
    for (Z rz = floor_q(c) - w; rz <= ceil_q(c) + w; ++rz) {
      Q r(rz);
      Q bound = d * d * H2 - r * r * s + 2 * r * kappa * d + bog;
      if (bound < 0) continue;
      AffineCoset c1s;
      if (!F.L.solve(S.form(r * beta + d * S.H, S.H), c1s)) continue;
      AffineCoset Ds{c1s.base - r * beta - d * S.H, c1s.gens};
      Q a = r * s / 2 - kappa * d;
      for (auto& D : short_vectors(S.gram, bound, Ds)) {
        BetaDecomposition dec{r, a, d, D};
        MukaiVector v = recompose_at(dec, beta, S);
        if (!is_integral(v)) continue;
        Q sq = mukai_sq(v, S);
        if (sq < -bog) continue;
        Q ch = chain_term(sq, d, F);
        if (ch > budget) continue;
        out.push_back({v, d, ch});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Part& a, const Part& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.v < b.v;
  });
  return out;
}

inline void multisets(const std::vector<Part>& P, std::size_t start, const MukaiVector& rest, const Q& rest_d,
                      const Q& budget, std::vector<MukaiVector>& cur, std::size_t min_parts,
                      std::vector<std::vector<MukaiVector>>& out) {
  if (rest_d == 0) {
    if (is_zero(rest) && cur.size() >= min_parts) out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < P.size(); ++i) {
    const Part& x = P[i];
    if (x.d > rest_d) break;
    if (x.chain > budget) continue;
    if (x.d == rest_d && x.v != rest) continue;
    cur.push_back(x.v);
    multisets(P, i, rest - x.v, rest_d - x.d, budget - x.chain, cur, min_parts, out);
    cur.pop_back();
  }
}

}  // namespace detail

// Z = 0 classes n·u (u ∈ 𝔯 with a wall through p) usable as the extra zero-charge part of a decomposition
inline std::vector<MukaiVector> zero_charge_remainders(const MukaiVector& v, const StabilityPoint& p,
                                                       const BetaFrame& F) {
  std::vector<MukaiVector> out;
  const auto& S = F.surface;
  if (S.epsilon != 1) return out;
  Box at{p.eta, {}, {}, {}, p.s, p.s};
  Q d = decompose_at(v, F, p).d;
  Q v2 = mukai_sq(v, S), bog = 2 * (d / F.d_min) * (d / F.d_min);
  for (auto& w : category_walls_in_box(F, at)) {
    Q vu = mukai_pairing(v, w.u, S);
    // ⟨(v−nu)²⟩ = ⟨v²⟩ − 2n⟨v,u⟩ − 2n² ≥ −bog
    Z lim = sqrt_ceil_bound(vu * vu + v2 + bog) + ceil_q(abs_q(vu)) + 1;
    for (Z n = -lim; n <= lim; ++n) {
      if (n == 0) continue;
      MukaiVector x = Q(n) * w.u;
      if (mukai_sq(v - x, S) >= -bog) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct MultisetOnWall {
  std::vector<MukaiVector> parts;  // d > 0 parts
  std::optional<MukaiVector> zero;  // Z = 0 part
};

// every multiset {v_i} with v = Σ v_i, Z(v_i) ∈ R_{≥0} Z(v) at p, at least two parts
inline std::vector<MultisetOnWall> aligned_multisets(const MukaiVector& v, const StabilityPoint& p,
                                                     const BetaFrame& F) {
  const auto& S = F.surface;
  check_point(p, F);
  if (!is_integral(v)) throw UserError("wall-crossing needs an integral Mukai vector");
  auto z = central_charge(v, F, p);
  if (z.im_coeff <= 0) throw UserError("wall-crossing needs d(v) > 0");
  Q kappa = z.re / z.im_coeff;
  std::vector<MultisetOnWall> out;
  auto run = [&](const MukaiVector& target, std::optional<MukaiVector> zero, std::size_t min_parts) {
    Q d = decompose_at(target, F, p).d;
    Q budget = detail::chain_term(mukai_sq(target, S), d, F);
    if (budget < 0) return;
    auto P = detail::aligned_parts(kappa, d, budget, F, p);
    std::vector<std::vector<MukaiVector>> ms;
    std::vector<MukaiVector> cur;
    detail::multisets(P, 0, target, d, budget, cur, min_parts, ms);
    for (auto& m : ms) out.push_back({m, zero});
  };
  run(v, std::nullopt, 2);
  for (auto& w : zero_charge_remainders(v, p, F)) run(v - w, w, 1);
  return out;
}

// φ_side(a) > φ_side(b) for aligned classes with d > 0; nullopt on a tie
using PhaseOrder = std::function<std::optional<bool>(const MukaiVector&, const MukaiVector&)>;

inline PhaseOrder infinitesimal_order(Side side, const BetaFrame& F, const StabilityPoint& p) {
  return [side, F, p](const MukaiVector& a, const MukaiVector& b) -> std::optional<bool> {
    auto x = decompose_at(a, F, p), y = decompose_at(b, F, p);
    // moving s up: φ(b) > φ(a) iff r_a d_b − r_b d_a > 0
    Q t = x.r * y.d - y.r * x.d;
    if (t == 0) return std::nullopt;
    bool a_first = t < 0;
    return side == Side::Plus ? a_first : !a_first;
  };
}

inline PhaseOrder point_order(const BetaFrame& F, const StabilityPoint& q) {
  return [F, q](const MukaiVector& a, const MukaiVector& b) -> std::optional<bool> {
    auto c = phase_cmp(central_charge(a, F, q), central_charge(b, F, q));
    if (c == 0) return std::nullopt;
    return c > 0;
  };
}

inline WallDecompositions decompositions_on_wall(const MukaiVector& v, const StabilityPoint& p, const BetaFrame& F,
                                                 Side side, std::optional<StabilityPoint> perturbed = std::nullopt) {
  PhaseOrder before = perturbed ? point_order(F, *perturbed) : infinitesimal_order(side, F, p);
  WallDecompositions res;
  for (auto& m : aligned_multisets(v, p, F)) {
    std::vector<MukaiVector> sorted = m.parts;
    bool tie = false;
    for (std::size_t i = 0; i < sorted.size() && !tie; ++i)
      for (std::size_t j = i + 1; j < sorted.size() && !tie; ++j)
        if (!before(sorted[i], sorted[j])) tie = true;
    if (!tie)
      std::sort(sorted.begin(), sorted.end(),
                [&](const MukaiVector& x, const MukaiVector& y) { return x != y && *before(x, y); });
    if (tie) {
      auto all = m.parts;
      if (m.zero) all.push_back(*m.zero);
      std::sort(all.begin(), all.end());
      res.s_equivalent.push_back(all);
      continue;
    }
    Decomposition dcp{sorted, side, p, std::nullopt};
    if (m.zero) {
      // phase 1 on the minus side (first), phase 0 on the plus side (last)
      if (side == Side::Minus) {
        dcp.parts.insert(dcp.parts.begin(), *m.zero);
        dcp.zero_part = 0;
      } else {
        dcp.parts.push_back(*m.zero);
        dcp.zero_part = dcp.parts.size() - 1;
      }
    }
    res.tuples.push_back(dcp);
  }
  auto key = [](const Decomposition& d) { return d.parts; };
  std::sort(res.tuples.begin(), res.tuples.end(),
            [&](const Decomposition& a, const Decomposition& b) { return key(a) < key(b); });
  std::sort(res.s_equivalent.begin(), res.s_equivalent.end());
  return res;
}

// Σ_{i>j} ⟨v_i, v_j⟩
inline Q pair_exponent(const std::vector<MukaiVector>& parts, const SurfaceData& S) {
  Q e = 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) e += mukai_pairing(parts[i], parts[j], S);
  return e;
}

inline std::string atom_name(const MukaiVector& v) {
  std::string s = "N(" + to_str(v.r) + ",";
  if (v.c1.size() == 1) s += to_str(v.c1[0]);
  else {
    s += "[";
    for (std::size_t i = 0; i < v.c1.size(); ++i) s += (i ? "," : "") + to_str(v.c1[i]);
    s += "]";
  }
  return s + "," + to_str(v.s) + ")";
}

// counts N(v); Z = 0 classes may carry a side phase (1 on the minus side, 0 on the plus side)
struct CountOracle {
  std::map<MukaiVector, LaurentPolyQ> table;
  std::map<std::pair<MukaiVector, int>, LaurentPolyQ> phased;
  bool symbolic = false;

  CountExpr operator()(const MukaiVector& v, std::optional<int> phase = std::nullopt) const {
    if (phase) {
      auto it = phased.find({v, *phase});
      if (it != phased.end()) return it->second;
    }
    auto it = table.find(v);
    if (it != table.end()) return it->second;
    if (symbolic) return CountExpr::atom(atom_name(v));
    throw UserError("count oracle has no value for " + to_str(v));
  }
};

inline CountExpr tuple_term(const Decomposition& dcp, const std::function<CountExpr(std::size_t)>& count,
                            const SurfaceData& S) {
  Q e = pair_exponent(dcp.parts, S);
  if (!is_int(e)) throw InvariantError("non-integral q-exponent");
  CountExpr t = LaurentPolyQ::monomial(int(e.get_num().get_si()));
  for (std::size_t i = 0; i < dcp.parts.size(); ++i) t = t * count(i);
  return t;
}

// N_side(v) + Σ_tuples q^{Σ_{i>j}⟨v_i,v_j⟩} Π N_side(v_i)
inline CountExpr wall_value(const MukaiVector& v, const CountOracle& oracle, const std::vector<Decomposition>& decomps,
                            const SurfaceData& S) {
  CountExpr total = oracle(v);
  for (auto& dcp : decomps) {
    int phase = dcp.side == Side::Minus ? 1 : 0;
    total += tuple_term(
        dcp,
        [&](std::size_t i) {
          return dcp.zero_part && *dcp.zero_part == i ? oracle(dcp.parts[i], phase) : oracle(dcp.parts[i]);
        },
        S);
  }
  return total;
}

// N_+(v) from the minus-side counts, recursing in d
inline CountExpr crossing_solve(const MukaiVector& v, const CountOracle& minus, const StabilityPoint& p,
                                const BetaFrame& F) {
  const auto& S = F.surface;
  std::map<MukaiVector, CountExpr> memo;
  std::function<CountExpr(const MukaiVector&)> plus = [&](const MukaiVector& x) -> CountExpr {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    auto dm = decompositions_on_wall(x, p, F, Side::Minus).tuples;
    auto dp = decompositions_on_wall(x, p, F, Side::Plus).tuples;
    CountExpr r = wall_value(x, minus, dm, S);
    for (auto& dcp : dp)
      r -= tuple_term(
          dcp,
          [&](std::size_t i) {
            return dcp.zero_part && *dcp.zero_part == i ? minus(dcp.parts[i], 0) : plus(dcp.parts[i]);
          },
          S);
    memo[x] = r;
    return r;
  };
  try {
    return plus(v);
  } catch (const UserError& e) {
    throw UserError(std::string("crossing_solve: unresolved recursion, ") + e.what());
  }
}

// ---------------------------------------------------------------- dimensions

inline Q expected_dim(const MukaiVector& v, const SurfaceData& S) {
  auto [l, vp] = primitive_part(v);
  Q v2 = mukai_sq(v, S), vp2 = mukai_sq(vp, S);
  Q lq(l);
  if (v2 > 0) return v2 + 1;
  if (v2 == 0) return v2 + lq;
  if (vp2 == -2) return v2 + lq * lq;
  throw UserError("expected_dim: <v'^2> < -2 has no dimension formula");
}

struct CodimClass {
  Q defect;
  std::string kind;  // "a", "b1".."b4", ">=2", "other"
};

inline CodimClass classify_codim(const MukaiVector& v, const std::vector<MukaiVector>& parts, const SurfaceData& S) {
  if (S.epsilon == 1) throw UserError("classify_codim assumes <v_i^2> >= 0 (abelian surface, epsilon = 0)");
  if (parts.size() < 2) throw UserError("classify_codim needs at least two parts");
  MukaiVector sum{0, zero_class(S.rho()), 0};
  for (auto& x : parts) {
    sum = sum + x;
    if (mukai_sq(x, S) < 0) throw UserError("classify_codim needs <v_i^2> >= 0");
  }
  if (sum != v) throw UserError("parts do not sum to v");
  CodimClass c;
  c.defect = expected_dim(v, S) - pair_exponent(parts, S);
  for (auto& x : parts) c.defect -= expected_dim(x, S);
  auto iso = [&](const MukaiVector& x) { return mukai_sq(x, S) == 0; };
  auto pr = [&](const MukaiVector& x, const MukaiVector& y) { return mukai_pairing(x, y, S); };
  std::size_t s = parts.size();
  if (c.defect >= 2) {
    c.kind = ">=2";
    return c;
  }
  c.kind = "other";
  if (c.defect == 0 && s == 2) {
    for (int k = 0; k < 2; ++k) {
      auto [l, u1] = primitive_part(parts[k]);
      if (iso(u1) && pr(u1, parts[1 - k]) == 1) c.kind = "a";
    }
  } else if (c.defect == 1 && s == 2) {
    for (int k = 0; k < 2; ++k) {
      const auto& u1 = parts[k];
      if (iso(u1) && primitive_part(u1).first == 1 && pr(u1, parts[1 - k]) == 2) c.kind = "b1";
    }
    if (c.kind == "other" && is_integral(Q(1, 2) * parts[0]) && is_integral(Q(1, 2) * parts[1])) {
      MukaiVector u1 = Q(1, 2) * parts[0], u2 = Q(1, 2) * parts[1];
      if (iso(u1) && iso(u2) && pr(u1, u2) == 1) c.kind = "b2";
    }
  } else if (c.defect == 1 && s == 3) {
    bool b3 = mukai_sq(v, S) == 6;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!iso(parts[i])) b3 = false;
      for (std::size_t j = i + 1; j < 3; ++j)
        if (pr(parts[i], parts[j]) != 1) b3 = false;
    }
    if (b3) c.kind = "b3";
    for (std::size_t k = 0; k < 3 && c.kind == "other"; ++k) {
      const auto& u1 = parts[(k + 1) % 3];
      const auto& u2 = parts[(k + 2) % 3];
      if (parts[k] == u1 + u2 && iso(u1) && iso(u2) && pr(u1, u2) == 1 && v == Q(2) * (u1 + u2)) c.kind = "b4";
    }
  }
  return c;
}

// ---------------------------------------------------------------- isotropic walls

inline void require_isotropic(const MukaiVector& w1, const SurfaceData& S) {
  if (mukai_sq(w1, S) != 0) throw UserError("w1 must be isotropic");
}

// w2 = v − (⟨v²⟩/2) w1 with ⟨w2²⟩ = 0, ⟨w1,w2⟩ = 1
inline MukaiVector isotropic_complement(const MukaiVector& v, const MukaiVector& w1, const SurfaceData& S) {
  require_isotropic(w1, S);
  if (mukai_pairing(v, w1, S) != 1) throw UserError("isotropic_complement needs <v,w1> = 1");
  MukaiVector w2 = v - (mukai_sq(v, S) / 2) * w1;
  if (mukai_sq(w2, S) != 0 || mukai_pairing(w1, w2, S) != 1) throw InvariantError("isotropic complement check");
  return w2;
}

// d = v − (⟨v²⟩/2) w1 with ⟨d²⟩ = −⟨v²⟩
inline MukaiVector divisor_class_d(const MukaiVector& v, const MukaiVector& w1, const SurfaceData& S) {
  require_isotropic(w1, S);
  if (mukai_pairing(v, w1, S) != 2) throw UserError("divisor_class_d needs <v,w1> = 2");
  MukaiVector d = v - (mukai_sq(v, S) / 2) * w1;
  if (mukai_sq(d, S) != -mukai_sq(v, S)) throw InvariantError("divisor class check");
  return d;
}

struct ThetaResult {
  MukaiVector by_w1;    // x − ⟨w1,x⟩ d
  MukaiVector by_refl;  // x − 2(⟨d,x⟩/⟨d²⟩) d
};

inline ThetaResult theta_reflection_both(const MukaiVector& v, const MukaiVector& w1, const MukaiVector& x,
                                         const SurfaceData& S) {
  if (mukai_pairing(v, x, S) != 0) throw UserError("theta_reflection needs x in v^perp");
  MukaiVector d = divisor_class_d(v, w1, S);
  Q dd = mukai_sq(d, S);
  if (dd == 0) throw UserError("theta_reflection needs <v^2> != 0");
  return {x - mukai_pairing(w1, x, S) * d, x - (2 * mukai_pairing(d, x, S) / dd) * d};
}

inline MukaiVector theta_reflection(const MukaiVector& v, const MukaiVector& w1, const MukaiVector& x,
                                    const SurfaceData& S) {
  auto t = theta_reflection_both(v, w1, x, S);
  if (t.by_w1 != t.by_refl) throw InvariantError("theta_reflection formulas disagree");
  return t.by_w1;
}

struct SlopeS {
  std::optional<Q> via_a;       // 2(a1/d1 − a2/d2)/(r1/d1 − r2/d2)
  std::optional<Q> via_square;  // [((d1H+D1)²)/(d1 r1) − ((d2H+D2)²)/(d2 r2)]/(r1/d1 − r2/d2)
  Q via_split;                  // −d1d2(H²)/(r1r2) + (d2r2(D1²) − r1d1(D2²))/(r1r2(r1d2 − r2d1))
  Q s;
  bool positive;
};

inline SlopeS slope_behavior_s(const MukaiVector& w1, const MukaiVector& w2, const BetaFrame& F) {
  const auto& S = F.surface;
  require_isotropic(w1, S);
  require_isotropic(w2, S);
  auto x = beta_decompose(w1, F), y = beta_decompose(w2, F);
  if (x.r * y.r == 0) throw UserError("slope_behavior_s needs r1 r2 != 0");
  if (x.r * y.d == y.r * x.d) throw UserError("slope_behavior_s needs r1 d2 != r2 d1");
  SlopeS out;
  Q H2 = S.H2();
  out.via_split = -x.d * y.d * H2 / (x.r * y.r) +
                  (y.d * y.r * S.sq(x.D) - x.r * x.d * S.sq(y.D)) / (x.r * y.r * (x.r * y.d - y.r * x.d));
  if (x.d != 0 && y.d != 0) {
    Q den = x.r / x.d - y.r / y.d;
    out.via_a = 2 * (x.a / x.d - y.a / y.d) / den;
    Q q1 = S.sq(x.d * S.H + x.D) / (x.d * x.r), q2 = S.sq(y.d * S.H + y.D) / (y.d * y.r);
    out.via_square = (q1 - q2) / den;
    if (*out.via_a != out.via_split || *out.via_square != out.via_split)
      throw InvariantError("slope_behavior_s expressions disagree");
  }
  out.s = out.via_split;
  out.positive = out.s > 0;
  return out;
}

struct BNFiber {
  int n, m;
  LaurentPolyQ count;  // #Gr(n, m)(F_q)
  MukaiVector base;    // v − m u
};

inline BNFiber bn_fiber(const MukaiVector& v, const MukaiVector& u, int m, const SurfaceData& S) {
  if (mukai_sq(u, S) != -2) throw UserError("bn_fiber needs <u^2> = -2");
  if (m < 0) throw UserError("bn_fiber needs m >= 0");
  Q vu = mukai_pairing(v, u, S);
  Q n = 2 * Q(m) + vu;
  if (n < m) throw UserError("bn_fiber needs 2m + <v,u> >= m");
  int ni = int(n.get_num().get_si());
  return {ni, m, q_binomial(ni, m), v - Q(m) * u};
}

}  // namespace bridgeland
