#pragma once

#include "bridgeland/bridgeland.hpp"
#include "oracles.hpp"

#include <functional>
#include <random>
#include <set>

namespace fx {

using namespace bridgeland;

// elliptic K3: basis (σ, f), H = σ + 4f, D = σ − 2f
inline SurfaceData ek3() { return {1, {{Q(-2), Q(1)}, {Q(1), Q(0)}}, {Q(1), Q(4)}}; }
inline NSClass ek3_D() { return {Q(1), Q(-2)}; }

// abelian surface, NS = ZH, (H²) = 2
inline SurfaceData ab1() { return {0, {{Q(2)}}, {Q(1)}}; }

// K3 with NS = ZH, (H²) = 2
inline SurfaceData k3_h2() { return {1, {{Q(2)}}, {Q(1)}}; }

// abelian, NS = ZH ⊕ ZD with (H²) = 2, (D²) = −2
inline SurfaceData ab2() { return {0, {{Q(2), Q(0)}, {Q(0), Q(-2)}}, {Q(1), Q(0)}}; }

inline MukaiVector mv(long r, std::vector<long> c, long s) {
  NSClass c1;
  for (long x : c) c1.push_back(Q(x));
  return {Q(r), c1, Q(s)};
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned long seed) : g(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  Q rational(long num, long den_max) {
    Q x(integer(-num, num), integer(1, den_max));
    x.canonicalize();
    return x;
  }
  Q positive(long num, long den_max) {
    Q x(integer(1, num), integer(1, den_max));
    x.canonicalize();
    return x;
  }
  NSClass ns(std::size_t n, long c) {
    NSClass x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Q(integer(-c, c)));
    return x;
  }
  NSClass ns_q(std::size_t n, long num, long den) {
    NSClass x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rational(num, den));
    return x;
  }
  MukaiVector vec(std::size_t n, long c) { return {Q(integer(-c, c)), ns(n, c), Q(integer(-c, c))}; }
  MukaiVector vec_q(std::size_t n, long num, long den) {
    return {rational(num, den), ns_q(n, num, den), rational(num, den)};
  }
};

// η with (η, H) = 0 in the frame; random small perturbation along H^⊥
inline NSClass random_eta(const BetaFrame& F, Rng& R, long num = 3, long den = 4) {
  NSClass e = F.eta_beta;
  for (auto& g : F.L.basis) e = e + R.rational(num, den) * g;
  return e;
}

// one engine-vs-scan case on a box with at most one η direction
struct OracleCase {
  SurfaceData S;
  NSClass beta;
  MukaiVector v;
  Box box;
  long R1, C, Smax;
};

inline oracle::Slice slice_of(const Box& B) {
  oracle::Slice sl{B.origin, std::nullopt, 0, 0, B.s_lo, B.s_hi};
  if (!B.dirs.empty()) {
    sl.dir = B.dirs[0];
    sl.lo = B.lo[0];
    sl.hi = B.hi[0];
  }
  return sl;
}

inline bool in_scan(const MukaiVector& x, long R, long C, long Smax) {
  if (abs_q(x.r) > R || abs_q(x.s) > Smax) return false;
  for (auto& c : x.c1)
    if (abs_q(c) > C) return false;
  return true;
}

// empty string when engine and naive scan agree
inline std::string stability_mismatch(const OracleCase& c) {
  auto F = frame_constants(c.S, c.beta);
  auto walls = stability_wall_candidates(c.v, F, c.box);
  std::map<MukaiVector, std::vector<MukaiVector>> eng;
  for (auto& w : walls) {
    auto cls = w.classes;
    for (auto& x : cls)
      if (!in_scan(x, c.R1, c.C, c.Smax)) return "engine class outside scan box: " + to_str(x);
    std::sort(cls.begin(), cls.end());
    eng[w.ray] = cls;
  }
  auto naive = oracle::stability_walls(c.v, c.S, F.b, F.d_min, slice_of(c.box), c.R1, c.C, c.Smax);
  if (eng == naive) return "";
  std::string m = "v = " + to_str(c.v) + ": engine " + std::to_string(eng.size()) + " walls, scan " +
                  std::to_string(naive.size());
  for (auto& [k, cls] : naive)
    if (!eng.count(k) || eng[k] != cls) m += "; scan-only ray " + to_str(k);
  for (auto& [k, cls] : eng)
    if (!naive.count(k)) m += "; engine-only ray " + to_str(k);
  return m;
}

inline std::string category_mismatch(const OracleCase& c) {
  auto F = frame_constants(c.S, c.beta);
  std::vector<MukaiVector> eng;
  for (auto& w : category_walls_in_box(F, c.box)) {
    if (!in_scan(w.u, c.R1, c.C, c.Smax)) return "engine class outside scan box: " + to_str(w.u);
    eng.push_back(w.u);
  }
  auto naive = oracle::category_walls(c.S, F.b, slice_of(c.box), c.R1, c.C, c.Smax);
  if (eng == naive) return "";
  std::string m = "engine " + std::to_string(eng.size()) + " walls, scan " + std::to_string(naive.size());
  for (auto& u : naive)
    if (std::find(eng.begin(), eng.end(), u) == eng.end()) m += "; scan-only " + to_str(u);
  for (auto& u : eng)
    if (std::find(naive.begin(), naive.end(), u) == naive.end()) m += "; engine-only " + to_str(u);
  return m;
}

inline std::vector<OracleCase> oracle_cases() {
  std::vector<OracleCase> cs;
  auto E = ek3();
  NSClass D = ek3_D(), z2 = zero_class(2);
  Box ekbox{z2, {D}, {Q(0)}, {Q(1, 2)}, Q(1), Q(2)};
  Box ekfix{Q(1, 3) * D, {}, {}, {}, Q(1, 5), Q(2)};
  // ⟨v²⟩ ≤ 20 throughout
  cs.push_back({ab1(), {Q(0)}, mv(0, {2}, 0), {{Q(0)}, {}, {}, {}, Q(1), Q(4)}, 6, 8, 12});
  cs.push_back({ab1(), {Q(0)}, mv(1, {2}, 0), {{Q(0)}, {}, {}, {}, Q(1, 2), Q(6)}, 6, 8, 12});
  cs.push_back({ab1(), {Q(1, 2)}, mv(2, {3}, 1), {{Q(0)}, {}, {}, {}, Q(1, 4), Q(3)}, 8, 8, 12});
  cs.push_back({k3_h2(), {Q(0)}, mv(1, {2}, 1), {{Q(0)}, {}, {}, {}, Q(1, 2), Q(4)}, 6, 8, 12});
  cs.push_back({k3_h2(), {Q(1, 2)}, mv(2, {3}, 2), {{Q(0)}, {}, {}, {}, Q(1, 2), Q(3)}, 8, 8, 12});
  cs.push_back({ab2(), {Q(0), Q(0)}, mv(1, {2, 1}, 0), {{Q(0), Q(0)}, {{Q(0), Q(1)}}, {Q(-1, 2)}, {Q(1, 2)}, Q(1), Q(3)}, 5, 6, 10});
  cs.push_back({ab2(), {Q(0), Q(0)}, mv(0, {2, 0}, -1), {{Q(0), Q(0)}, {{Q(0), Q(1)}}, {Q(0)}, {Q(1)}, Q(1, 2), Q(3)}, 5, 6, 10});
  cs.push_back({E, z2, mv(1, {1, 4}, 2), ekbox, 8, 10, 16});
  cs.push_back({E, z2, mv(0, {1, 4}, 1), ekbox, 8, 10, 16});
  cs.push_back({E, Q(1, 3) * D, mv(1, {1, 2}, 0), ekfix, 8, 10, 16});
  return cs;
}


// distinct primitive isotropic v with d > 0 on the abelian fixtures, each with a box to scan
struct HomogCase {
  BetaFrame F;
  MukaiVector v;
  Box box;
};

inline std::vector<HomogCase> homogeneous_cases(int n, unsigned long seed) {
  Rng R(seed);
  auto F1 = frame_constants(ab1(), {Q(0)});
  auto F2 = frame_constants(ab2(), zero_class(2));
  Box B1{{Q(0)}, {}, {}, {}, Q(1, 10), Q(10)};
  Box B2{zero_class(2), {{Q(0), Q(1)}}, {Q(-1, 2)}, {Q(1, 2)}, Q(1, 4), Q(4)};
  std::set<MukaiVector> seen;
  std::vector<HomogCase> out;
  while ((int)out.size() < n) {
    bool two = R.integer(0, 1) == 1;
    auto& F = two ? F2 : F1;
    long r = R.integer(0, 5);
    auto c = R.ns(F.surface.rho(), 5);
    Q c2 = F.surface.sq(c);
    // ⟨v²⟩ = (c²) − 2rs = 0
    MukaiVector v;
    if (r == 0) {
      if (c2 != 0) continue;
      v = {0, c, Q(R.integer(-5, 5))};
    } else {
      Q s = c2 / (2 * r);
      if (!is_int(s)) continue;
      v = {Q(r), c, s};
    }
    if (is_zero(v) || primitive_part(v).first != 1) continue;
    if (beta_decompose(v, F).d <= 0 || !seen.insert(v).second) continue;
    out.push_back({F, v, two ? B2 : B1});
  }
  return out;
}

// K3, Pic = ZH, exceptional v(E0) = √r0·e^β + ϱ/√r0 at β = c1(E0)/rk(E0)
struct ExceptionalCase {
  SurfaceData S;
  NSClass beta;
  MukaiVector e0;
  long r0;
};

inline std::vector<ExceptionalCase> exceptional_cases() {
  return {{k3_h2(), {Q(1, 2)}, mv(2, {1}, 1), 4},
          {{1, {{Q(4)}}, {Q(1)}}, {Q(1, 3)}, mv(3, {1}, 1), 9},
          {{1, {{Q(2)}}, {Q(1)}}, {Q(0)}, mv(1, {0}, 1), 1}};
}

using Multiset = std::vector<MukaiVector>;

// aligned d > 0 multisets by box scan: Z(w) ∈ R_{>0} Z(v), Bogomolov, Σ w = v
inline std::set<Multiset> naive_multisets(const MukaiVector& v, const BetaFrame& F, const StabilityPoint& p,
                                          long R, long C, long Smax) {
  const auto& S = F.surface;
  NSClass bH = F.b * S.H;
  auto dv = decompose_at(v, bH + p.eta, S);
  Q rv = oracle::twice_re(v, bH, p.eta, p.s, S);
  std::vector<std::pair<MukaiVector, Q>> parts;
  for (long r = -R; r <= R; ++r)
    for (auto& c : oracle::cube(S.rho(), C))
      for (long s = -Smax; s <= Smax; ++s) {
        MukaiVector w{Q(r), c, Q(s)};
        Q d = decompose_at(w, bH + p.eta, S).d;
        if (d <= 0 || d >= dv.d) continue;
        if (oracle::twice_re(w, bH, p.eta, p.s, S) * dv.d != rv * d) continue;
        if (mukai_sq(w, S) < -2 * (d / F.d_min) * (d / F.d_min) * Q(S.epsilon)) continue;
        parts.push_back({w, d});
      }
  std::set<Multiset> out;
  Multiset cur;
  std::function<void(std::size_t, const MukaiVector&)> rec = [&](std::size_t i, const MukaiVector& rest) {
    Q d = decompose_at(rest, bH + p.eta, S).d;
    if (cur.size() >= 1) {
      auto it = std::find_if(parts.begin(), parts.end(), [&](auto& x) { return x.first == rest; });
      if (it != parts.end() && it - parts.begin() >= (long)i) {
        auto m = cur;
        m.push_back(rest);
        std::sort(m.begin(), m.end());
        out.insert(m);
      }
    }
    for (std::size_t j = i; j < parts.size(); ++j) {
      if (parts[j].second >= d) continue;
      cur.push_back(parts[j].first);
      rec(j, rest - parts[j].first);
      cur.pop_back();
    }
  };
  rec(0, v);
  return out;
}

struct WallCase {
  BetaFrame F;
  MukaiVector v;
  Box box;
};

inline std::vector<WallCase> wall_cases() {
  return {{frame_constants(ab1(), {Q(0)}), mv(0, {2}, 0), fixed_beta_interval({Q(0)}, Q(1, 2), 6)},
          {frame_constants(ab1(), {Q(0)}), mv(1, {2}, 0), fixed_beta_interval({Q(0)}, Q(1, 2), 6)},
          {frame_constants(ab1(), {Q(0)}), mv(0, {3}, 1), fixed_beta_interval({Q(0)}, Q(1, 2), 6)},
          {frame_constants(ab1(), {Q(1, 2)}), mv(2, {3}, 1), fixed_beta_interval({Q(0)}, Q(1, 4), 3)},
          {frame_constants(k3_h2(), {Q(0)}), mv(1, {2}, 1), fixed_beta_interval({Q(0)}, Q(1, 2), 4)},
          {frame_constants(k3_h2(), {Q(0)}), mv(0, {2}, 1), fixed_beta_interval({Q(0)}, Q(1, 2), 4)},
          {frame_constants(ab2(), zero_class(2)), mv(1, {2, 1}, 0), fixed_beta_interval(zero_class(2), Q(1, 10), 8)}};
}

// wall points s* at the fixed η of the box
inline std::vector<StabilityPoint> wall_points(const WallCase& c) {
  CandidateOptions opt;
  opt.fixed_beta = true;
  std::set<Q> ss;
  for (auto& w : stability_wall_candidates_ex(c.v, c.F, c.box, opt).walls) {
    Q f0 = stability_wall_eval(c.v, w.v1, {c.box.origin, 1}, c.F);
    Q f1 = stability_wall_eval(c.v, w.v1, {c.box.origin, 2}, c.F);
    if (f1 == f0) continue;
    Q s = 1 - f0 / (f1 - f0);
    if (s > 0) ss.insert(s);
  }
  std::vector<StabilityPoint> out;
  for (auto& s : ss) out.push_back({c.box.origin, s});
  return out;
}

// tuple lists, sorted; reversed() flips each tuple
inline std::vector<Multiset> reversed(const std::vector<Decomposition>& ds) {
  std::vector<Multiset> out;
  for (auto& d : ds) out.push_back({d.parts.rbegin(), d.parts.rend()});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Multiset> plain(const std::vector<Decomposition>& ds) {
  std::vector<Multiset> out;
  for (auto& d : ds) out.push_back(d.parts);
  std::sort(out.begin(), out.end());
  return out;
}

// EK3 with hat = id, β′ = 0; r0 is determined by β
inline MukaiIsometry ek3_fm(const NSClass& beta) {
  auto S = ek3();
  Z r0 = frame_constants(S, beta).r0;
  return fm_build(r0, S, beta, S.gram, zero_class(2), identity(2));
}

struct StarCase {
  BetaFrame F;
  MukaiVector v;
  Q s;
};

// random v with r ≥ 0 and d of the requested sign on small surfaces
inline std::vector<StarCase> star_cases(int n, int sign, unsigned long seed) {
  Rng R(seed);
  std::vector<BetaFrame> frames{frame_constants(ab1(), {Q(0)}), frame_constants(k3_h2(), {Q(1, 2)}),
                                frame_constants(ek3(), zero_class(2)), frame_constants(ab2(), zero_class(2))};
  std::vector<StarCase> out;
  while ((int)out.size() < n) {
    auto& F = frames[R.integer(0, frames.size() - 1)];
    MukaiVector v{Q(R.integer(0, 3)), R.ns(F.surface.rho(), 3), Q(R.integer(-3, 3))};
    auto x = beta_decompose(v, F);
    if (x.d * sign <= 0 || abs_q(x.d) > 3) continue;
    out.push_back({F, v, R.positive(7, 3)});
  }
  return out;
}

struct PairCase {
  SurfaceData S;
  NSClass beta;
  MukaiVector v1, v2;
};

// random integral pairs at random rational β with d1, d2 > 0
inline std::vector<PairCase> identity_pairs(int n, unsigned long seed) {
  Rng R(seed);
  std::vector<SurfaceData> Ss{ek3(), ab1(), k3_h2(), ab2()};
  std::vector<PairCase> out;
  while ((int)out.size() < n) {
    auto& S = Ss[R.integer(0, Ss.size() - 1)];
    NSClass beta = R.ns_q(S.rho(), 3, 4);
    auto v1 = R.vec(S.rho(), 6), v2 = R.vec(S.rho(), 6);
    if (decompose_at(v1, beta, S).d <= 0 || decompose_at(v2, beta, S).d <= 0) continue;
    out.push_back({S, beta, v1, v2});
  }
  return out;
}

inline std::vector<MukaiVector> minus_two_classes(const SurfaceData& S) {
  std::vector<MukaiVector> out;
  for (long r = -3; r <= 3; ++r)
    for (auto& c : oracle::cube(S.rho(), 3))
      for (long s = -4; s <= 4; ++s) {
        MukaiVector u{Q(r), c, Q(s)};
        if (mukai_sq(u, S) == -2) out.push_back(u);
      }
  return out;
}

}  // namespace fx
