#pragma once

#include "central_charge.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bridgeland {

// f(η, s) = X (s − (η²)) + 2 (N, η) + C   on the slice β = bH + η, η ⊥ H
struct WallFunction {
  Q X;
  NSClass N;  // kept orthogonal to H
  Q C;

  Q operator()(const SurfaceData& S, const NSClass& eta, const Q& s) const {
    return X * (s - S.sq(eta)) + 2 * S.form(N, eta) + C;
  }
};

inline WallFunction operator*(const Q& t, const WallFunction& f) { return {t * f.X, t * f.N, t * f.C}; }
inline WallFunction operator-(const WallFunction& f, const WallFunction& g) {
  return {f.X - g.X, f.N - g.N, f.C - g.C};
}

// 2·Re Z_{(bH+η, ω)}(w) as a function of (η, s)
inline WallFunction twice_re_charge(const MukaiVector& w, const BetaFrame& F) {
  const auto& S = F.surface;
  Q hc = S.form(S.H, w.c1);
  return {w.r, S.perp(w.c1), 2 * F.b * hc - w.r * F.b * F.b * S.H2() - 2 * w.s};
}

enum class GeometryKind { HalfSphere, Hyperplane, Empty, Everywhere };

struct WallGeometry {
  GeometryKind kind = GeometryKind::Empty;
  NSClass center;  // HalfSphere: −(η − center)² + s = radius_sq
  Q radius_sq;
  NSClass normal;  // Hyperplane: (η, normal) = offset
  Q offset;
};

inline WallGeometry geometry_of(const WallFunction& f, const SurfaceData& S) {
  WallGeometry g;
  if (f.X != 0) {
    g.center = (1 / f.X) * f.N;
    g.radius_sq = -S.sq(g.center) - f.C / f.X;
    g.kind = g.radius_sq > 0 ? GeometryKind::HalfSphere : GeometryKind::Empty;
  } else if (!is_zero(f.N)) {
    g.kind = GeometryKind::Hyperplane;
    g.normal = f.N;
    g.offset = -f.C / 2;
  } else {
    g.kind = f.C == 0 ? GeometryKind::Everywhere : GeometryKind::Empty;
  }
  return g;
}

inline std::string kind_name(GeometryKind k) {
  switch (k) {
    case GeometryKind::HalfSphere: return "half_sphere";
    case GeometryKind::Hyperplane: return "hyperplane";
    case GeometryKind::Empty: return "empty";
    case GeometryKind::Everywhere: return "everywhere";
  }
  return "?";
}

// η = origin + Σ t_i dirs_i with t_i ∈ [lo_i, hi_i], s ∈ [s_lo, s_hi]
struct Box {
  NSClass origin;
  std::vector<NSClass> dirs;
  std::vector<Q> lo, hi;
  Q s_lo, s_hi;

  NSClass eta(const std::vector<Q>& t) const {
    NSClass e = origin;
    for (std::size_t i = 0; i < dirs.size(); ++i) e = e + t[i] * dirs[i];
    return e;
  }
  NSClass center() const {
    std::vector<Q> t(dirs.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = (lo[i] + hi[i]) / 2;
    return eta(t);
  }
  std::vector<std::vector<Q>> vertices() const {
    std::vector<std::vector<Q>> out{{}};
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      std::vector<std::vector<Q>> nxt;
      for (auto& v : out) {
        auto a = v, b = v;
        a.push_back(lo[i]);
        nxt.push_back(a);
        if (hi[i] != lo[i]) {
          b.push_back(hi[i]);
          nxt.push_back(b);
        }
      }
      out = nxt;
    }
    return out;
  }
  bool contains(const SurfaceData& S, const StabilityPoint& p) const;
};

inline void validate(const Box& B, const SurfaceData& S) {
  if (B.origin.size() != S.rho()) throw UserError("box origin has wrong NS dimension");
  if (S.form(B.origin, S.H) != 0) throw UserError("box origin is not orthogonal to H");
  if (B.lo.size() != B.dirs.size() || B.hi.size() != B.dirs.size())
    throw UserError("box bounds do not match its directions");
  for (std::size_t i = 0; i < B.dirs.size(); ++i) {
    if (B.dirs[i].size() != S.rho()) throw UserError("box direction has wrong NS dimension");
    if (S.form(B.dirs[i], S.H) != 0) throw UserError("box direction is not orthogonal to H");
    if (B.lo[i] > B.hi[i]) throw UserError("empty box (lo > hi)");
  }
  if (!(B.s_lo > 0)) throw UserError("box s-range must lie in Q_{>0}");
  if (B.s_lo > B.s_hi) throw UserError("empty box (s_lo > s_hi)");
  Matrix g(B.dirs.size(), std::vector<Q>(B.dirs.size()));
  for (std::size_t i = 0; i < B.dirs.size(); ++i)
    for (std::size_t j = 0; j < B.dirs.size(); ++j) g[i][j] = -S.form(B.dirs[i], B.dirs[j]);
  if (!B.dirs.empty() && signature(g).pos != int(B.dirs.size()))
    throw UserError("box directions are linearly dependent");
}

// coordinates of a point in the box frame, if it lies in the affine span
inline std::optional<std::vector<Q>> box_coords(const Box& B, const SurfaceData& S, const NSClass& eta) {
  std::size_t m = B.dirs.size();
  NSClass rel = eta - B.origin;
  Matrix g(m, std::vector<Q>(m));
  NSClass rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g[i][j] = S.form(B.dirs[i], B.dirs[j]);
    rhs[i] = S.form(B.dirs[i], rel);
  }
  std::vector<Q> t = m ? mat_vec(inverse(g), rhs) : std::vector<Q>{};
  if (B.eta(t) != eta) return std::nullopt;
  return t;
}

inline bool Box::contains(const SurfaceData& S, const StabilityPoint& p) const {
  if (p.s < s_lo || p.s > s_hi) return false;
  auto t = box_coords(*this, S, p.eta);
  if (!t) return false;
  for (std::size_t i = 0; i < t->size(); ++i)
    if ((*t)[i] < lo[i] || (*t)[i] > hi[i]) return false;
  return true;
}

namespace detail {

// min over the box of the convex quadratic t^T A t + 2 b.t + c  (A positive semidefinite)
inline Q convex_min(const Matrix& A, const NSClass& b, const Q& c, const std::vector<Q>& lo,
                    const std::vector<Q>& hi) {
  std::size_t m = lo.size();
  auto value = [&](const std::vector<Q>& t) {
    Q v = c;
    for (std::size_t i = 0; i < m; ++i) {
      v += 2 * b[i] * t[i];
      for (std::size_t j = 0; j < m; ++j) v += t[i] * A[i][j] * t[j];
    }
    return v;
  };
  std::optional<Q> best;
  // state per coordinate: 0 = lo, 1 = hi, 2 = free
  std::vector<int> st(m, 0);
  for (;;) {
    std::vector<std::size_t> fr;
    std::vector<Q> t(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (st[i] == 2) fr.push_back(i);
      else t[i] = st[i] ? hi[i] : lo[i];
    }
    bool ok = true;
    if (!fr.empty()) {
      std::size_t k = fr.size();
      Matrix Af(k, std::vector<Q>(k));
      NSClass rhs(k);
      for (std::size_t a = 0; a < k; ++a) {
        rhs[a] = -b[fr[a]];
        for (std::size_t i = 0; i < m; ++i)
          if (st[i] != 2) rhs[a] -= A[fr[a]][i] * t[i];
        for (std::size_t c2 = 0; c2 < k; ++c2) Af[a][c2] = A[fr[a]][fr[c2]];
      }
      try {
        NSClass sol = mat_vec(inverse(Af), rhs);
        for (std::size_t a = 0; a < k; ++a) {
          if (sol[a] < lo[fr[a]] || sol[a] > hi[fr[a]]) ok = false;
          t[fr[a]] = sol[a];
        }
      } catch (const UserError&) {
        ok = false;  // singular face: its minimum also sits on a lower face
      }
    }
    if (ok) {
      Q v = value(t);
      if (!best || v < *best) best = v;
    }
    std::size_t i = 0;
    while (i < m && st[i] == 2) st[i++] = 0;
    if (i == m) break;
    ++st[i];
  }
  return *best;
}

}  // namespace detail

struct Range {
  Q lo, hi;
};

// exact range of a wall function over a box
inline Range range_on_box(const WallFunction& f, const Box& B, const SurfaceData& S) {
  std::size_t m = B.dirs.size();
  // g(t) = t^T A t + 2 b.t + c
  Matrix A(m, std::vector<Q>(m));
  NSClass b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) A[i][j] = -f.X * S.form(B.dirs[i], B.dirs[j]);
    b[i] = -f.X * S.form(B.origin, B.dirs[i]) + S.form(f.N, B.dirs[i]);
  }
  Q c = -f.X * S.sq(B.origin) + 2 * S.form(f.N, B.origin) + f.C;
  auto gval = [&](const std::vector<Q>& t) {
    Q v = c;
    for (std::size_t i = 0; i < m; ++i) {
      v += 2 * b[i] * t[i];
      for (std::size_t j = 0; j < m; ++j) v += t[i] * A[i][j] * t[j];
    }
    return v;
  };
  std::optional<Q> vmin, vmax;
  for (auto& t : B.vertices()) {
    Q v = gval(t);
    if (!vmin || v < *vmin) vmin = v;
    if (!vmax || v > *vmax) vmax = v;
  }
  if (f.X > 0) {
    vmin = detail::convex_min(A, b, c, B.lo, B.hi);
  } else if (f.X < 0) {
    Matrix nA = A;
    for (auto& row : nA)
      for (auto& x : row) x = -x;
    vmax = -detail::convex_min(nA, -b, -c, B.lo, B.hi);
  }
  Q s1 = f.X * B.s_lo, s2 = f.X * B.s_hi;
  if (s1 > s2) std::swap(s1, s2);
  return {*vmin + s1, *vmax + s2};
}

inline bool meets(const WallFunction& f, const Box& B, const SurfaceData& S) {
  auto r = range_on_box(f, B, S);
  return r.lo <= 0 && 0 <= r.hi;
}

// ---------------------------------------------------------------- categories

struct CategoryWall {
  MukaiVector u;
  bool degenerate = false;  // rk u = 0
  WallFunction f;
  WallGeometry geometry;
};

inline void require_k3(const BetaFrame& F) {
  if (F.surface.epsilon != 1)
    throw UserError("walls for categories exist only on K3 surfaces (epsilon = 1)");
}

inline CategoryWall make_category_wall(const MukaiVector& u, const BetaFrame& F) {
  CategoryWall w;
  w.u = u;
  w.degenerate = u.r == 0;
  w.f = twice_re_charge(u, F);
  w.geometry = geometry_of(w.f, F.surface);
  return w;
}

// rk u · s + 2⟨e^{bH+η}, u⟩
inline Q category_wall_eval(const MukaiVector& u, const StabilityPoint& p, const BetaFrame& F) {
  const auto& S = F.surface;
  return u.r * p.s + 2 * mukai_pairing(exp_beta(point_beta(F, p), S), u, S);
}

inline bool in_frak_R(const MukaiVector& u, const BetaFrame& F) {
  const auto& S = F.surface;
  MukaiVector h{0, S.H, S.form(S.H, F.b * S.H)};
  return mukai_sq(u, S) == -2 && mukai_pairing(u, h, S) == 0;
}

// 𝔯_β: u ∈ 𝔯 with rk u > 0 and −⟨e^β, u⟩ > 0
inline std::vector<CategoryWall> enumerate_R_beta(const BetaFrame& F) {
  require_k3(F);
  const auto& S = F.surface;
  Q b2 = S.sq(F.beta) / 2;
  std::vector<MukaiVector> us;
  long r0 = F.r0.get_si();
  for (long r = 1; r <= r0; ++r) {
    AffineCoset c1s;
    if (!F.L.solve(Q(r) * S.form(F.beta, S.H), c1s)) continue;
    AffineCoset Ds{c1s.base - Q(r) * F.beta, c1s.gens};
    for (long k = 1; k * r <= r0; ++k) {
      Q a(k, r0);
      a.canonicalize();
      Q target = 2 * Q(r) * a - 2;
      for (auto& D : short_vectors(S.gram, -target, Ds)) {
        if (S.sq(D) != target) continue;
        Q su = Q(r) * b2 + a + S.form(D, F.beta);
        if (!is_int(su)) continue;
        us.push_back({Q(r), D + Q(r) * F.beta, su});
      }
    }
  }
  std::sort(us.begin(), us.end());
  std::vector<CategoryWall> out;
  for (auto& u : us) {
    if (!in_frak_R(u, F)) throw InvariantError("enumerate_R_beta produced a class outside 𝔯");
    out.push_back(make_category_wall(u, F));
  }
  return out;
}

// distinct values of −⟨e^β,u⟩/rk u = (ω²)/2 over 𝔯_β
inline std::vector<Q> category_thresholds(const BetaFrame& F) {
  std::vector<Q> t;
  for (auto& w : enumerate_R_beta(F)) {
    Q a = -mukai_pairing(exp_beta(F.beta, F.surface), w.u, F.surface);
    t.push_back(a / w.u.r);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

inline Q box_radius_sq(const Box& B, const SurfaceData& S, const NSClass& c) {
  Q R = 0;
  for (auto& t : B.vertices()) {
    NSClass e = B.eta(t) - c;
    if (-S.sq(e) > R) R = -S.sq(e);
  }
  return R;
}

// sign convention for rank-0 classes: first nonzero c1 coordinate positive
inline MukaiVector orient_rank0(const MukaiVector& u) {
  for (auto& x : u.c1)
    if (x != 0) return x > 0 ? u : -u;
  return u;
}

inline std::vector<CategoryWall> category_walls_in_box(const BetaFrame& F, const Box& B,
                                                       bool include_degenerate = true) {
  require_k3(F);
  const auto& S = F.surface;
  validate(B, S);
  NSClass eta0 = B.center();
  Q Rbox = box_radius_sq(B, S, eta0);
  Q H2 = S.H2();
  std::vector<MukaiVector> us;
  // positive rank: the half-sphere reaches s = 2/r² at most
  for (long r = 1; Q(r * r) * B.s_lo <= 2; ++r) {
    AffineCoset c1s;
    if (!F.L.solve(Q(r) * F.b * H2, c1s)) continue;
    AffineCoset Ys{c1s.base - Q(r) * F.b * S.H - Q(r) * eta0, c1s.gens};
    Q bound = 2 * (2 + Q(r * r) * Rbox);
    for (auto& y : short_vectors(S.gram, bound, Ys)) {
      NSClass D = y + Q(r) * eta0;
      Q a = (S.sq(D) + 2) / (2 * Q(r));
      Q su = a + Q(r) * F.b * F.b * H2 / 2;
      if (!is_int(su)) continue;
      MukaiVector u{Q(r), D + Q(r) * F.b * S.H, su};
      if (meets(twice_re_charge(u, F), B, S)) us.push_back(u);
    }
  }
  if (include_degenerate) {
    AffineCoset Ls{zero_class(S.rho()), F.L.basis};
    for (auto& c : short_vectors(S.gram, 2, Ls)) {
      if (S.sq(c) != -2) continue;
      MukaiVector u0 = orient_rank0({0, c, 0});
      if (u0.c1 != c) continue;  // each ± pair once
      // wall (η, c) = s_u ; s_u ranges over the integers hit by the box
      Q lo, hi;
      bool first = true;
      for (auto& t : B.vertices()) {
        Q v = S.form(B.eta(t), c);
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
      }
      for (Z k = ceil_q(lo); k <= floor_q(hi); ++k) us.push_back({0, c, Q(k)});
    }
  }
  std::sort(us.begin(), us.end());
  std::vector<CategoryWall> out;
  for (auto& u : us) {
    if (!in_frak_R(u, F)) throw InvariantError("category_walls_in_box produced a class outside 𝔯");
    out.push_back(make_category_wall(u, F));
  }
  return out;
}

// ---------------------------------------------------------------- stabilities

struct StabilityWall {
  MukaiVector v1;                   // canonical class on the wall
  std::vector<MukaiVector> classes;  // every candidate class defining this wall
  MukaiVector ray;                  // normalised generator of Q(v1/d1 − v/d)
  WallFunction f;                   // for v1: d·2ReZ(v1) − d1·2ReZ(v)
  WallGeometry geometry;
};

struct CandidateOptions {
  bool partner_bogomolov = true;  // also require Bogomolov for v − v1
  bool fixed_beta = false;        // region is a single η (box without directions)
};

struct CandidateResult {
  std::vector<StabilityWall> walls;
  std::size_t dropped_boundary = 0;  // classes with equality in condition (b)
};

inline WallFunction stability_wall_function(const MukaiVector& v, const MukaiVector& v1, const BetaFrame& F) {
  Q d = decompose_at(v, F.b * F.surface.H, F.surface).d;
  Q d1 = decompose_at(v1, F.b * F.surface.H, F.surface).d;
  return d * twice_re_charge(v1, F) - d1 * twice_re_charge(v, F);
}

// s(dr1 − d1r) − 2(−d⟨e^{bH+η},v1⟩ + d1⟨e^{bH+η},v⟩)
inline Q stability_wall_eval(const MukaiVector& v, const MukaiVector& v1, const StabilityPoint& p,
                             const BetaFrame& F) {
  const auto& S = F.surface;
  auto x = decompose_at(v, F, p), y = decompose_at(v1, F, p);
  MukaiVector e = exp_beta(point_beta(F, p), S);
  return p.s * (x.d * y.r - y.d * x.r) -
         2 * (-x.d * mukai_pairing(e, v1, S) + y.d * mukai_pairing(e, v, S));
}

inline Q bogomolov_bound(const Q& d, const BetaFrame& F) {
  return -2 * (d / F.d_min) * (d / F.d_min) * Q(F.surface.epsilon);
}

namespace detail {
inline std::vector<Q> canon_key(const MukaiVector& v1, const BetaFrame& F) {
  auto dec = decompose_at(v1, F.b * F.surface.H, F.surface);
  std::vector<Q> k{dec.d, dec.r, dec.a};
  k.insert(k.end(), dec.D.begin(), dec.D.end());
  return k;
}
}  // namespace detail

// Classify one class v1 against (a),(b),(c) (+ options). Returns 1 accepted,
// 0 rejected, −1 rejected only by equality in (b).
inline int candidate_status(const MukaiVector& v, const MukaiVector& v1, const BetaFrame& F,
                            const Box& B, const CandidateOptions& opt) {
  const auto& S = F.surface;
  NSClass bH = F.b * S.H;
  auto x = decompose_at(v, bH, S), y = decompose_at(v1, bH, S);
  Q eps(S.epsilon), dm2 = F.d_min * F.d_min;
  if (!(0 < y.d && y.d < x.d)) return 0;
  Q v2 = mukai_sq(v, S), v12 = mukai_sq(v1, S);
  Q hb = (y.d / x.d) * v2 + 2 * x.d * y.d * eps / dm2;
  if (v12 < bogomolov_bound(y.d, F)) return 0;
  if (opt.partner_bogomolov && mukai_sq(v - v1, S) < bogomolov_bound(x.d - y.d, F)) return 0;
  if (parallel(v, v1)) return 0;
  if (opt.fixed_beta) {
    NSClass Dp = x.D - x.r * B.origin, D1p = y.D - y.r * B.origin;
    if (!(v12 - S.sq(D1p) < (y.d / x.d) * (v2 - S.sq(Dp)) + 2 * x.d * y.d * eps / dm2)) return 0;
  }
  WallFunction f = stability_wall_function(v, v1, F);
  auto geo = geometry_of(f, S);
  if (geo.kind == GeometryKind::Empty || !meets(f, B, S)) return 0;
  if (!(v12 < hb)) return v12 == hb ? -1 : 0;
  return 1;
}

inline CandidateResult stability_wall_candidates_ex(const MukaiVector& v, const BetaFrame& F, const Box& B,
                                                    const CandidateOptions& opt = {}) {
  const auto& S = F.surface;
  validate(B, S);
  if (opt.fixed_beta && !B.dirs.empty())
    throw UserError("fixed-beta mode needs a region without eta directions");
  if (!is_integral(v)) throw UserError("stability walls need an integral Mukai vector");
  NSClass bH = F.b * S.H;
  auto dv = decompose_at(v, bH, S);
  if (dv.d <= 0) throw UserError("stability walls need d(v) > 0");
  Q H2 = S.H2(), eps(S.epsilon), dm = F.d_min, dm2 = dm * dm;
  NSClass eta0 = B.center();
  Q Rbox = box_radius_sq(B, S, eta0);
  Q Meta = box_radius_sq(B, S, zero_class(S.rho()));
  Q A = abs_q(dv.a) + (-S.sq(dv.D) + Meta) / 2 + abs_q(dv.r) * Meta / 2;
  Q v2 = mukai_sq(v, S);
  // 2 Re Z(v) = r s + h(η); range of h over the box
  Range gv = range_on_box(twice_re_charge(v, F), B, S);
  Q hlo = gv.lo - (dv.r < 0 ? dv.r * B.s_hi : dv.r * B.s_lo);
  Q hhi = gv.hi - (dv.r < 0 ? dv.r * B.s_lo : dv.r * B.s_hi);

  CandidateResult res;
  std::map<MukaiVector, std::vector<MukaiVector>> by_ray;
  for (Q d1 = dm; d1 < dv.d; d1 += dm) {
    Q K = d1 * d1 * H2 + 2 * d1 * d1 * eps / dm2;
    Q rb = abs_q(d1 * dv.r / dv.d) + (K + 2 * d1 * A / dv.d) / B.s_lo;
    Z rmax = floor_q(rb);
    Q lowc = bogomolov_bound(d1, F);
    Q highb = (d1 / dv.d) * v2 + 2 * dv.d * d1 * eps / dm2;
    for (Z r1z = -rmax; r1z <= rmax; ++r1z) {
      Q r1(r1z);
      // on the wall, −(D1 − r1η)² = d1²(H²) − ⟨v1²⟩ − r1²s + r1(d1/d)·2ReZ(v) at some (η, s) of the box
      Q cs = r1 * d1 * dv.r / dv.d - r1 * r1;
      Q B2 = K + cs * (cs < 0 ? B.s_lo : B.s_hi) + d1 / dv.d * (r1 < 0 ? r1 * hlo : r1 * hhi);
      if (B2 < 0) continue;
      AffineCoset c1s;
      if (!F.L.solve((d1 + r1 * F.b) * H2, c1s)) continue;
      Q X = dv.d * r1 - d1 * dv.r;
      Q B1 = K + 2 * abs_q(r1) * (B.s_hi * abs_q(X) / 2 + d1 * A) / dv.d;
      Q cross = r1 * r1 * Rbox;
      Q ybound = B2 + cross + 2 * Q(sqrt_ceil_bound(B2 * cross));
      if (2 * B1 + 2 * cross < ybound) ybound = 2 * B1 + 2 * cross;
      NSClass shift = (r1 * F.b + d1) * S.H;
      AffineCoset Ys{c1s.base - shift - r1 * eta0, c1s.gens};
      for (auto& y : short_vectors(S.gram, ybound, Ys)) {
        NSClass D1 = y + r1 * eta0;
        Q D12 = S.sq(D1);
        Q amax = (B.s_hi * abs_q(X) / 2 + d1 * A) / dv.d + (-D12 + Meta) / 2 + abs_q(r1) * Meta / 2;
        Q alo = -amax, ahi = amax;
        if (r1 != 0) {
          Q e1 = (d1 * d1 * H2 + D12 - highb) / (2 * r1);
          Q e2 = (d1 * d1 * H2 + D12 - lowc) / (2 * r1);
          if (e1 > e2) std::swap(e1, e2);
          if (e1 > alo) alo = e1;
          if (e2 < ahi) ahi = e2;
        } else {
          Q w = d1 * d1 * H2 + D12;
          if (w < lowc || w > highb) continue;
        }
        if (alo > ahi) continue;
        // s1 = a1 + r1 b² H²/2 + d1 b H² must be an integer
        Q off = r1 * F.b * F.b * H2 / 2 + d1 * F.b * H2;
        Z s_first = ceil_q(alo + off), s_last = floor_q(ahi + off);
        if (s_first > s_last) continue;
        // s1 only shifts the wall function: f(s1) = f(s_first) − 2d(s1 − s_first)
        Range rg = range_on_box(stability_wall_function(v, {r1, D1 + shift, Q(s_first)}, F), B, S);
        Z k_lo = ceil_q(rg.lo / (2 * dv.d)), k_hi = floor_q(rg.hi / (2 * dv.d));
        if (s_first + k_hi < s_last) s_last = s_first + k_hi;
        if (k_lo > 0) s_first += k_lo;
        for (Z s1 = s_first; s1 <= s_last; ++s1) {
          MukaiVector v1{r1, D1 + shift, Q(s1)};
          int st = candidate_status(v, v1, F, B, opt);
          if (st == -1) ++res.dropped_boundary;
          if (st != 1) continue;
          auto dec1 = decompose_at(v1, bH, S);
          MukaiVector ray = normalized_ray((1 / dec1.d) * v1 - (1 / dv.d) * v);
          by_ray[ray].push_back(v1);
        }
      }
    }
  }
  for (auto& [ray, cls] : by_ray) {
    StabilityWall w;
    w.ray = ray;
    w.classes = cls;
    std::sort(w.classes.begin(), w.classes.end(), [&](const MukaiVector& a, const MukaiVector& b) {
      return detail::canon_key(a, F) < detail::canon_key(b, F);
    });
    w.v1 = w.classes.front();
    w.f = stability_wall_function(v, w.v1, F);
    w.geometry = geometry_of(w.f, S);
    res.walls.push_back(w);
  }
  std::sort(res.walls.begin(), res.walls.end(), [&](const StabilityWall& a, const StabilityWall& b) {
    return detail::canon_key(a.v1, F) < detail::canon_key(b.v1, F);
  });
  return res;
}

inline std::vector<StabilityWall> stability_wall_candidates(const MukaiVector& v, const BetaFrame& F,
                                                            const Box& B, const CandidateOptions& opt = {}) {
  return stability_wall_candidates_ex(v, F, B, opt).walls;
}

// region for the fixed-β mode: η fixed, s ∈ [s_lo, s_hi]
inline Box fixed_beta_interval(const NSClass& eta, const Q& s_lo, const Q& s_hi) {
  return Box{eta, {}, {}, {}, s_lo, s_hi};
}

// ---------------------------------------------------------------- chambers

struct SignatureEntry {
  std::string id;
  int sign;
  bool operator==(const SignatureEntry&) const = default;
};

struct ChamberSignature {
  std::vector<SignatureEntry> entries;
  bool boundary = false;
  bool operator==(const ChamberSignature& o) const { return entries == o.entries; }
};

struct NamedWall {
  std::string id;
  WallFunction f;
};

// every wall relevant to a region: category walls (K3) and, when v is given, stability candidates
inline std::vector<NamedWall> walls_in_region(const std::optional<MukaiVector>& v, const BetaFrame& F,
                                              const Box& B) {
  std::vector<NamedWall> ws;
  if (F.surface.epsilon == 1)
    for (auto& c : category_walls_in_box(F, B)) ws.push_back({"category:" + to_str(c.u), c.f});
  if (v)
    for (auto& s : stability_wall_candidates(*v, F, B)) ws.push_back({"stability:" + to_str(s.ray), s.f});
  return ws;
}

inline ChamberSignature signature_at(const std::vector<NamedWall>& ws, const StabilityPoint& p,
                                     const SurfaceData& S) {
  ChamberSignature sig;
  for (auto& w : ws) {
    int s = sgn(w.f(S, p.eta, p.s));
    if (s == 0) sig.boundary = true;
    sig.entries.push_back({w.id, s});
  }
  return sig;
}

inline ChamberSignature locate_chamber(const std::optional<MukaiVector>& v, const StabilityPoint& p,
                                       const BetaFrame& F, const Box& region) {
  check_point(p, F);
  if (!region.contains(F.surface, p)) throw UserError("point lies outside the region");
  return signature_at(walls_in_region(v, F, region), p, F.surface);
}

// does f change sign at a simple root strictly inside the segment p→q?
inline bool segment_crosses(const WallFunction& f, const StabilityPoint& p, const StabilityPoint& q,
                            const SurfaceData& S) {
  NSClass de = q.eta - p.eta;
  Q ds = q.s - p.s;
  // f(t) = al t² + be t + ga
  Q al = -f.X * S.sq(de);
  Q be = f.X * (ds - 2 * S.form(p.eta, de)) + 2 * S.form(f.N, de);
  Q ga = f(S, p.eta, p.s);
  auto val = [&](const Q& t) -> Q { return al * t * t + be * t + ga; };
  Q f0 = ga, f1 = val(1);
  if (al == 0) {
    if (be == 0) return false;
    Q t = -ga / be;
    return t > 0 && t < 1;
  }
  Q disc = be * be - 4 * al * ga;
  if (disc <= 0) return false;  // no real root or a tangency
  if (sgn(f0) * sgn(f1) < 0) return true;
  Q tv = -be / (2 * al);
  if (f0 == 0 || f1 == 0) {
    // one root at an endpoint; the other is rational
    Q t2 = (f0 == 0 ? Q(0) : Q(1));
    Q other = -be / al - t2;
    return other > 0 && other < 1;
  }
  return tv > 0 && tv < 1 && sgn(val(tv)) != sgn(f0);
}

struct ChamberComparison {
  bool same_signature;
  bool segment_clear;
  bool same_chamber;
};

inline ChamberComparison compare_points(const std::optional<MukaiVector>& v, const StabilityPoint& p,
                                        const StabilityPoint& q, const BetaFrame& F, const Box& region) {
  check_point(p, F);
  check_point(q, F);
  if (!region.contains(F.surface, p) || !region.contains(F.surface, q))
    throw UserError("point lies outside the region");
  auto ws = walls_in_region(v, F, region);
  auto sp = signature_at(ws, p, F.surface), sq = signature_at(ws, q, F.surface);
  ChamberComparison c;
  c.same_signature = sp == sq && !sp.boundary && !sq.boundary;
  c.segment_clear = true;
  for (auto& w : ws)
    if (segment_crosses(w.f, p, q, F.surface)) c.segment_clear = false;
  c.same_chamber = c.same_signature && c.segment_clear;
  return c;
}

}  // namespace bridgeland
