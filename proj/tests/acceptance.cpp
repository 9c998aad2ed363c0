// one line per acceptance criterion; exit status 1 if any fails
#include "fixtures.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace fx;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> why;
  void expect(bool c, const std::string& msg) {
    if (!c) {
      ok = false;
      if (why.size() < 3) why.push_back(msg);
    }
  }
};

using Clock = std::chrono::steady_clock;
double secs(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double t) {
  std::ostringstream os;
  os.precision(3);
  os << t << "s";
  return os.str();
}

int failures = 0;

void report(int n, const std::string& title, const std::function<std::string(Check&)>& body) {
  Check c;
  std::string info;
  try {
    info = body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.why.push_back(std::string("exception: ") + e.what());
  }
  std::cout << "AC" << n << " " << (c.ok ? "PASS" : "FAIL") << "  " << title;
  if (!info.empty()) std::cout << " [" << info << "]";
  for (auto& w : c.why) std::cout << " | " << w;
  std::cout << "\n";
  failures += !c.ok;
}

std::vector<MukaiVector> classes_of(const std::vector<CategoryWall>& ws) {
  std::vector<MukaiVector> out;
  for (auto& w : ws) out.push_back(w.u);
  return out;
}

}  // namespace

int main() {
  report(1, "elliptic K3 example, exact, < 1 s", [](Check& c) {
    auto t0 = Clock::now();
    auto S = ek3();
    auto D = ek3_D();
    MukaiVector u1 = mv(1, {0, 0}, 1), u2{1, D, -2}, u3{2, D, -1};
    c.expect(S.H2() == 6 && S.form(S.H, D) == 0 && S.sq(D) == -6, "intersection numbers");
    auto F3 = frame_constants(S, Q(1, 3) * D), F2 = frame_constants(S, Q(1, 2) * D);
    c.expect(classes_of(enumerate_R_beta(F3)) == std::vector<MukaiVector>{u1, u3}, "r_{D/3}");
    c.expect(classes_of(enumerate_R_beta(F2)) == std::vector<MukaiVector>{u1, u2, u3}, "r_{D/2}");
    c.expect(category_thresholds(F3) == std::vector<Q>{Q(1, 6), Q(2, 3)}, "thresholds at D/3");
    c.expect(category_thresholds(F2) == std::vector<Q>{Q(1, 4)}, "thresholds at D/2");
    auto F = frame_constants(S, zero_class(2));
    Box B{zero_class(2), {D}, {Q(0)}, {Q(1)}, Q(1, 10), Q(3)};
    std::map<MukaiVector, WallGeometry> geo;
    for (auto& w : category_walls_in_box(F, B, false)) geo[w.u] = w.geometry;
    c.expect(geo.size() == 3, "three walls in the box");
    // (x − x0)² + y² = R with η = xD, y² = s/(H²)
    for (auto [u, x0, R] : {std::tuple{u1, Q(0), Q(1, 3)}, {u2, Q(1), Q(1, 3)}, {u3, Q(1, 2), Q(1, 12)}}) {
      bool ok = geo.count(u) && geo[u].kind == GeometryKind::HalfSphere && geo[u].center == x0 * D &&
                geo[u].radius_sq / S.H2() == R;
      c.expect(ok, "circle of " + to_str(u));
      c.expect(category_wall_eval(u, {Q(1, 2) * D, Q(1, 12) * S.H2()}, F) == 0, "(1/2, 1/12) on " + to_str(u));
    }
    c.expect(reflect(u1, u2, S) == u3 && reflect(u1, u3, S) == u2, "R_u1 exchange");
    double t = secs(t0);
    c.expect(t < 1, "runtime " + fmt(t));
    return fmt(t);
  });

  report(2, "exceptional-bundle threshold = 1/r0", [](Check& c) {
    int n = 0;
    for (auto& e : exceptional_cases()) {
      auto F = frame_constants(e.S, e.beta);
      c.expect(F.r0 == e.r0 && mukai_sq(e.e0, e.S) == -2, "fixture " + to_str(e.e0));
      c.expect(category_thresholds(F) == std::vector<Q>{Q(1, e.r0)}, "threshold for r0 = " + std::to_string(e.r0));
      ++n;
    }
    return std::to_string(n) + " cases";
  });

  report(3, "FM invariant and charge commutation, exact, < 5 s", [](Check& c) {
    auto t0 = Clock::now();
    Rng R(41);
    int inv = 0, comm = 0;
    for (auto beta : {zero_class(2), NSClass{Q(0), Q(1, 2)}, NSClass{Q(0), Q(1, 3)}}) {
      auto iso = ek3_fm(beta);
      const auto& S = iso.source.surface;
      Q r0(iso.r0);
      for (int k = 0; k < 40; ++k) {
        StabilityPoint p{random_eta(iso.source, R), R.positive(9, 5)};
        auto q = param_transform(iso, p);
        NSClass e = p.eta - iso.source.eta_beta, et = q.eta - iso.target.eta_beta;
        c.expect((q.s - S.sq(et)) * (p.s - S.sq(e)) == 4 / (r0 * r0), "invariant at r0 = " + to_str(r0));
        ++inv;
      }
      for (int k = 0; k < 80; ++k) {
        StabilityPoint p{random_eta(iso.source, R), R.positive(9, 5)};
        auto [lhs, rhs] = charge_commutation_check(iso, R.vec(2, 6), p);
        c.expect(lhs.re == rhs.re && lhs.im_coeff == rhs.im_coeff, "commutation");
        ++comm;
      }
    }
    c.expect(inv >= 100 && comm >= 200, "case counts");
    double t = secs(t0);
    c.expect(t < 5, "runtime " + fmt(t));
    return std::to_string(inv) + " invariant points, " + std::to_string(comm) + " commutation cases, " + fmt(t);
  });

  report(4, "algebraic identities, exact", [](Check& c) {
    int pairing = 0, sum = 0, dec = 0, refl = 0, printed = 0;
    for (auto& p : identity_pairs(600, 107)) {
      auto x = decompose_at(p.v1, p.beta, p.S), y = decompose_at(p.v2, p.beta, p.S);
      NSClass dD = (1 / x.d) * x.D - (1 / y.d) * y.D;
      Q lhs = mukai_pairing(p.v1, p.v2, p.S) / (x.d * y.d);
      Q rhs = -p.S.sq(dD) / 2 + mukai_sq(p.v1, p.S) / (2 * x.d * x.d) + mukai_sq(p.v2, p.S) / (2 * y.d * y.d) +
              (x.r / x.d - y.r / y.d) * (x.a / x.d - y.a / y.d);
      c.expect(lhs == rhs, "pairing identity at " + to_str(p.v1) + ", " + to_str(p.v2));
      ++pairing;
    }
    for (auto& p : identity_pairs(600, 109)) {
      auto x = decompose_at(p.v1, p.beta, p.S), y = decompose_at(p.v2, p.beta, p.S);
      Q d1 = x.d, d2 = y.d;
      Q cross = (d2 * x.r - d1 * y.r) * (d2 * x.a - d1 * y.a) / (d1 * d2 * (d1 + d2));
      MukaiVector w = p.v1 + p.v2;
      Q lhs = mukai_sq(w, p.S) / (d1 + d2);
      Q base = mukai_sq(p.v1, p.S) / d1 + mukai_sq(p.v2, p.S) / d2 - p.S.sq(d2 * x.D - d1 * y.D) / (d1 * d2 * (d1 + d2));
      c.expect(lhs == base + 2 * cross, "sum identity");
      printed += lhs == base + cross;
      Q lhsD = (mukai_sq(w, p.S) - p.S.sq(x.D + y.D)) / (d1 + d2);
      Q rhsD = (mukai_sq(p.v1, p.S) - p.S.sq(x.D)) / d1 + (mukai_sq(p.v2, p.S) - p.S.sq(y.D)) / d2 + 2 * cross;
      c.expect(lhsD == rhsD, "sum identity, D form");
      ++sum;
    }
    Rng R(113);
    for (auto S : {ek3(), ab1(), k3_h2(), ab2()})
      for (int k = 0; k < 150; ++k) {
        NSClass beta = R.ns_q(S.rho(), 5, 6);
        auto v = R.vec_q(S.rho(), 7, 3);
        auto x = decompose_at(v, beta, S);
        c.expect(mukai_sq(v, S) == x.d * x.d * S.H2() + S.sq(x.D) - 2 * x.r * x.a && recompose_at(x, beta, S) == v,
                 "decomposition of " + to_str(v));
        ++dec;
      }
    Rng R2(127);
    for (auto S : {ek3(), k3_h2(), ab2()}) {
      auto us = minus_two_classes(S);
      for (int k = 0; k < 200; ++k) {
        auto& u = us[R2.integer(0, us.size() - 1)];
        auto x = R2.vec_q(S.rho(), 6, 3), y = R2.vec_q(S.rho(), 6, 3);
        auto rx = reflect(u, x, S), ry = reflect(u, y, S);
        c.expect(mukai_pairing(rx, ry, S) == mukai_pairing(x, y, S) && reflect(u, rx, S) == x, "reflection");
        ++refl;
      }
    }
    c.expect(pairing >= 500 && sum >= 500 && dec >= 500 && refl >= 500, "case counts");
    return std::to_string(pairing) + "/" + std::to_string(sum) + "/" + std::to_string(dec) + "/" +
           std::to_string(refl) + " cases; sum identities use cross-term coefficient 2 (coefficient 1 holds in " +
           std::to_string(printed) + "/" + std::to_string(sum) + ")";
  });

  report(5, "homogeneous vacuity, exact, < 1 s", [](Check& c) {
    auto cases = homogeneous_cases(24, 29);
    auto t0 = Clock::now();
    for (auto& h : cases) c.expect(stability_wall_candidates(h.v, h.F, h.box).empty(), "walls for " + to_str(h.v));
    double t = secs(t0);
    c.expect(t < 1, "runtime " + fmt(t));
    return std::to_string(cases.size()) + " isotropic v, " + fmt(t);
  });

  report(6, "engine matches naive box scan", [](Check& c) {
    int n = 0;
    for (auto& o : oracle_cases()) {
      auto m = stability_mismatch(o);
      c.expect(m.empty(), "stability: " + m);
      if (o.S.epsilon == 1) {
        auto k = category_mismatch(o);
        c.expect(k.empty(), "category: " + k);
      }
      ++n;
    }
    return std::to_string(n) + " cases";
  });

  report(7, "isotropic toolkit", [](Check& c) {
    auto S = ab1();
    auto w1 = mv(1, {1}, 1);
    int n = 0;
    for (long r = -4; r <= 4; ++r)
      for (long k = -4; k <= 4; ++k) {
        auto v = mv(r, {k}, 2 * k - r - 2);
        c.expect(mukai_sq(divisor_class_d(v, w1, S), S) == -mukai_sq(v, S), "<d^2> = -<v^2> at " + to_str(v));
        ++n;
      }
    struct Fix {
      SurfaceData S;
      MukaiVector v, w1;
      std::vector<MukaiVector> span;
    };
    std::vector<Fix> fs{{ab1(), mv(1, {0}, -3), mv(1, {1}, 1), {mv(1, {0}, 3), mv(0, {1}, 0)}},
                        {ab2(), mv(1, {0, 0}, -3), mv(1, {1, 0}, 1),
                         {mv(1, {0, 0}, 3), mv(0, {1, 0}, 0), mv(0, {0, 1}, 0)}}};
    for (auto& f : fs)
      for (auto& x : f.span) {
        auto t = theta_reflection_both(f.v, f.w1, x, f.S);
        c.expect(t.by_w1 == t.by_refl, "theta formulas at " + to_str(x));
      }
    auto F = frame_constants(ab1(), {Q(0)});
    auto r = slope_behavior_s(mv(-1, {1}, -1), mv(1, {1}, 1), F);
    c.expect(r.s == 2 && r.via_a && r.via_square && *r.via_a == 2 && *r.via_square == 2, "AB1 slope s = 2");
    return std::to_string(n) + " divisor cases";
  });

  report(8, "wall-crossing structure", [](Check& c) {
    std::mt19937_64 g(97);
    int walls = 0, sym = 0;
    for (auto& wc : wall_cases())
      for (auto& p : wall_points(wc)) {
        ++walls;
        auto dm = decompositions_on_wall(wc.v, p, wc.F, Side::Minus);
        auto dp = decompositions_on_wall(wc.v, p, wc.F, Side::Plus);
        c.expect(plain(dm.tuples) == reversed(dp.tuples), "reversal at " + to_str(wc.v) + ", s = " + to_str(p.s));
        CountOracle o{{}, {}, true};
        for (auto* ds : {&dm.tuples, &dp.tuples}) {
          auto base = wall_value(wc.v, o, *ds, wc.F.surface);
          auto sh = *ds;
          for (int k = 0; k < 5; ++k) {
            std::shuffle(sh.begin(), sh.end(), g);
            c.expect(wall_value(wc.v, o, sh, wc.F.surface) == base, "order dependence");
          }
        }
        bool two = !dm.tuples.empty() && dm.s_equivalent.empty();
        for (auto& t : dm.tuples) two = two && t.parts.size() == 2 && !t.zero_part;
        if (two) {
          c.expect(crossing_solve(wc.v, o, p, wc.F) == CountExpr::atom(atom_name(wc.v)), "N+ != N- at " + to_str(wc.v));
          ++sym;
        }
      }
    c.expect(walls >= 7 && sym >= 1, "wall counts");
    auto qm1 = [](int i) { return LaurentPolyQ::monomial(i) - LaurentPolyQ(1); };
    for (int n = 0; n <= 8; ++n) {
      for (int m = 0; m <= n; ++m) {
        LaurentPolyQ lhs = q_binomial(n, m), rhs(1);
        for (int i = 0; i < m; ++i) {
          lhs = lhs * qm1(i + 1);
          rhs = rhs * qm1(n - i);
        }
        c.expect(lhs == rhs, "q_binomial(" + std::to_string(n) + "," + std::to_string(m) + ")");
      }
      LaurentPolyQ gl(1);
      for (int i = 0; i < n; ++i) gl = gl * (LaurentPolyQ::monomial(n) - LaurentPolyQ::monomial(i));
      c.expect(gl_count(n) == gl, "gl_count(" + std::to_string(n) + ")");
    }
    return std::to_string(walls) + " walls, " + std::to_string(sym) + " symmetric two-part";
  });

  report(9, "star-condition consistency", [](Check& c) {
    Rng R(73);
    int sound = 0, duals = 0, vac = 0;
    for (auto& sc : star_cases(60, 1, 79)) {
      Q t = star1_threshold(sc.v, sc.F);
      Q s = (t > 0 ? t : Q(0)) + R.positive(3, 5);
      c.expect(check_star1(sc.v, sc.F, s).holds, "star1 fails above threshold for " + to_str(sc.v));
      c.expect(oracle::star1_violations(sc.v, sc.F.surface, sc.F.beta, s, sc.F.d_min, sc.F.delta, sc.F.r0, 40, 30)
                   .empty(),
               "scan finds violation above threshold for " + to_str(sc.v));
      ++sound;
    }
    for (auto& sc : star_cases(60, 1, 71)) {
      auto F2 = frame_constants(sc.F.surface, -sc.F.beta);
      auto w = dual(sc.v);
      auto s1 = oracle::star1_violations(sc.v, sc.F.surface, sc.F.beta, sc.s, sc.F.d_min, sc.F.delta, sc.F.r0, 40, 30);
      auto s2 = oracle::star2_violations(w, F2.surface, F2.beta, sc.s, F2.d_min, F2.delta, F2.r0, 40, 30);
      c.expect(s1.empty() == s2.empty(), "scan duality for " + to_str(sc.v));
      c.expect(check_star1(sc.v, sc.F, sc.s).holds == s1.empty(), "star1 vs scan for " + to_str(sc.v));
      c.expect(check_star2(w, F2, sc.s).holds == s2.empty(), "star2 vs scan for " + to_str(w));
      ++duals;
    }
    Rng R2(61);
    for (auto [S, beta] : {std::pair{ab1(), NSClass{Q(0)}}, {k3_h2(), NSClass{Q(1, 2)}}, {ek3(), zero_class(2)}}) {
      auto F = frame_constants(S, beta);
      for (int k = 0; k < 20; ++k) {
        Q r(R2.integer(0, 4));
        MukaiVector v{r, r * F.beta + F.d_min * S.H, Q(R2.integer(-4, 4))};
        if (!is_integral(v)) continue;
        c.expect(check_star1(v, F, R2.positive(5, 7)).holds, "d_min vacuity at " + to_str(v));
        ++vac;
      }
    }
    c.expect(sound >= 50 && duals >= 50 && vac >= 20, "case counts");
    return std::to_string(sound) + " threshold, " + std::to_string(duals) + " duality, " + std::to_string(vac) +
           " d_min cases";
  });

  report(10, "codimension classifier", [](Check& c) {
    auto S = ab1();
    auto u1 = mv(1, {0}, 0), u2 = mv(0, {0}, -1);
    auto a = classify_codim(mv(2, {0}, -1), {Q(2) * u1, u2}, S);
    c.expect(a.kind == "a" && a.defect == 0, "(a)");
    auto b1 = classify_codim(mv(1, {1}, -2), {u1, mv(0, {1}, -2)}, S);
    c.expect(b1.kind == "b1" && b1.defect == 1, "(b1)");
    auto b4 = classify_codim(mv(2, {0}, -2), {u1, u2, u1 + u2}, S);
    c.expect(b4.kind == "b4" && b4.defect == 1, "(b4)");
    auto gen = classify_codim(mv(2, {3}, -1), {mv(1, {1}, 0), mv(0, {1}, 0), mv(1, {1}, -1)}, S);
    c.expect(gen.kind == ">=2" && gen.defect == 5, "generic triple");
    return "defects 0/1/1/5";
  });

  return failures ? 1 : 0;
}
