#include "bridgeland/bridgeland.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace bridgeland;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  SurfaceData S;
  std::vector<std::string> names;
  NSClass beta;
  std::optional<NSClass> dir;
};

// ---------------------------------------------------------------- input

Q q_of(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Q(Z(j.dump()));
  if (j.is_string()) return parse_q(j.get<std::string>());
  throw UserError(what + ": expected an integer or a \"p/q\" string, got " + j.dump());
}

NSClass vec_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw UserError(what + ": expected an array");
  NSClass x;
  for (auto& e : j) x.push_back(q_of(e, what));
  return x;
}

Matrix mat_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw UserError(what + ": expected an array of rows");
  Matrix m;
  for (auto& row : j) m.push_back(vec_of(row, what));
  return m;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UserError("malformed JSON in " + path + ": " + e.what());
  }
}

Config load_config(const std::string& path) {
  json j = read_json(path);
  if (!j.is_object()) throw UserError("config must be a JSON object");
  for (auto key : {"epsilon", "gram", "H"})
    if (!j.contains(key)) throw UserError(std::string("config is missing \"") + key + "\"");
  Config c;
  Q eps = q_of(j["epsilon"], "epsilon");
  if (eps != 0 && eps != 1) throw UserError("epsilon must be 0 or 1");
  c.S.epsilon = eps == 1 ? 1 : 0;
  c.S.gram = mat_of(j["gram"], "gram");
  c.S.H = vec_of(j["H"], "H");
  validate(c.S);
  std::size_t n = c.S.rho();
  if (j.contains("basis_names")) {
    for (auto& s : j["basis_names"]) c.names.push_back(s.get<std::string>());
    if (c.names.size() != n) throw UserError("basis_names has wrong length");
  }
  c.beta = j.contains("beta") ? vec_of(j["beta"], "beta") : zero_class(n);
  if (c.beta.size() != n) throw UserError("beta has wrong length");
  if (j.contains("eta_direction")) {
    c.dir = vec_of(j["eta_direction"], "eta_direction");
    if (c.dir->size() != n) throw UserError("eta_direction has wrong length");
    if (c.S.form(*c.dir, c.S.H) != 0) throw UserError("eta_direction is not orthogonal to H");
    if (is_zero(*c.dir)) throw UserError("eta_direction is zero");
  }
  return c;
}

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

NSClass parse_class(const std::string& text, std::size_t n, const std::string& what) {
  std::string s = strip(text);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  NSClass x;
  if (!s.empty())
    for (auto& t : split(s, ',')) x.push_back(parse_q(t));
  if (x.size() != n) throw UserError(what + " needs " + std::to_string(n) + " entries");
  return x;
}

// "(r,[c1,...],s)"
MukaiVector parse_vector(const std::string& text, std::size_t n) {
  std::string s = strip(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  auto lb = s.find('['), rb = s.find(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw UserError("Mukai vector must look like (r,[c1,...],s): \"" + text + "\"");
  std::string r = s.substr(0, lb), rest = s.substr(rb + 1);
  if (r.empty() || r.back() != ',' || rest.empty() || rest.front() != ',')
    throw UserError("Mukai vector must look like (r,[c1,...],s): \"" + text + "\"");
  r.pop_back();
  return {parse_q(r), parse_class(s.substr(lb, rb - lb + 1), n, "c1"), parse_q(rest.substr(1))};
}

std::pair<Q, Q> parse_interval(const std::string& t) {
  auto p = split(t, ':');
  if (p.size() != 2) throw UserError("interval must be lo:hi, got \"" + t + "\"");
  return {parse_q(p[0]), parse_q(p[1])};
}

// "x=lo:hi,s=lo:hi" with η = x·ξ0, or "s=lo:hi" at a fixed η
Box parse_region(const std::string& text, const Config& c, const NSClass& fixed_eta) {
  std::optional<std::pair<Q, Q>> x, s;
  for (auto& part : split(strip(text), ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw UserError("region entries look like x=lo:hi or s=lo:hi");
    std::string key = part.substr(0, eq);
    if (key == "x") x = parse_interval(part.substr(eq + 1));
    else if (key == "s") s = parse_interval(part.substr(eq + 1));
    else throw UserError("unknown region key \"" + key + "\"");
  }
  if (!s) throw UserError("region needs an s=lo:hi range");
  Box B;
  B.s_lo = s->first;
  B.s_hi = s->second;
  if (x) {
    if (!c.dir) throw UserError("an x range needs eta_direction in the config");
    B.origin = zero_class(c.S.rho());
    B.dirs = {*c.dir};
    B.lo = {x->first};
    B.hi = {x->second};
  } else {
    B.origin = fixed_eta;
  }
  validate(B, c.S);
  return B;
}

// ---------------------------------------------------------------- output

json jq(const Q& x) { return to_str(x); }

json jclass(const NSClass& x) {
  json a = json::array();
  for (auto& e : x) a.push_back(to_str(e));
  return a;
}

json jvec(const MukaiVector& v) { return to_str(v); }

json jvecs(const std::vector<MukaiVector>& vs) {
  json a = json::array();
  for (auto& v : vs) a.push_back(jvec(v));
  return a;
}

// the wall on the slice η = xξ0: (q/(H²))(x − x0)² + t² = R with t² = s/(H²), q = −(ξ0²)
struct SliceCircle {
  Q x0, radius_sq, x_scale;
};

std::optional<SliceCircle> slice_circle(const WallGeometry& g, const Config& c) {
  if (!c.dir || g.kind != GeometryKind::HalfSphere) return std::nullopt;
  const auto& S = c.S;
  Q q = -S.sq(*c.dir);
  Q x0 = S.form(*c.dir, g.center) / -q;
  Q R = g.radius_sq + q * x0 * x0 + S.sq(g.center);
  return SliceCircle{x0, R / S.H2(), q / S.H2()};
}

json jgeometry(const WallGeometry& g, const Config& c) {
  json j;
  j["kind"] = kind_name(g.kind);
  if (g.kind == GeometryKind::HalfSphere) {
    j["center"] = jclass(g.center);
    j["radius_sq"] = jq(g.radius_sq);
    if (auto sc = slice_circle(g, c))
      j["slice"] = {{"x0", jq(sc->x0)}, {"radius_sq", jq(sc->radius_sq)}, {"x_scale", jq(sc->x_scale)}};
  } else if (g.kind == GeometryKind::Hyperplane) {
    j["normal"] = jclass(g.normal);
    j["offset"] = jq(g.offset);
  }
  return j;
}

json jwall_function(const WallFunction& f) { return {{"X", jq(f.X)}, {"N", jclass(f.N)}, {"C", jq(f.C)}}; }

json jpoly(const LaurentPolyQ& p) {
  json j = json::object();
  for (auto& [e, c] : p.terms()) j[std::to_string(e)] = jq(c);
  return j;
}

json jcount(const CountExpr& e) {
  json j{{"expr", e.str()}};
  if (e.is_numeric()) j["poly"] = jpoly(e.numeric());
  return j;
}

json jdecomp(const WallDecompositions& d) {
  json tuples = json::array();
  for (auto& t : d.tuples) {
    json x{{"parts", jvecs(t.parts)}};
    if (t.zero_part) x["zero_part"] = *t.zero_part;
    tuples.push_back(x);
  }
  json seq = json::array();
  for (auto& m : d.s_equivalent) seq.push_back(jvecs(m));
  return {{"tuples", tuples}, {"s_equivalent", seq}};
}

MukaiIsometry load_iso(const std::string& path, const Config& c) {
  json j = read_json(path);
  for (auto key : {"r0", "target_gram", "hat"})
    if (!j.contains(key)) throw UserError(std::string("isometry file is missing \"") + key + "\"");
  Q r0 = q_of(j["r0"], "r0");
  if (!is_int(r0)) throw UserError("r0 must be an integer");
  Matrix tg = mat_of(j["target_gram"], "target_gram");
  NSClass beta = j.contains("beta") ? vec_of(j["beta"], "beta") : c.beta;
  NSClass bp = j.contains("beta_prime") ? vec_of(j["beta_prime"], "beta_prime") : zero_class(tg.size());
  auto iso = fm_build(r0.get_num(), c.S, beta, tg, bp, mat_of(j["hat"], "hat"));
  iso.omega_hat_nef = j.value("omega_hat_nef", false);
  return iso;
}

// [{vector, poly: {exp: coeff}, phase?}]
CountOracle load_oracle(const std::string& path, std::size_t n, bool symbolic) {
  json j = read_json(path);
  if (!j.is_array()) throw UserError("oracle file must be a JSON array");
  CountOracle o;
  o.symbolic = symbolic;
  for (auto& e : j) {
    if (!e.contains("vector") || !e.contains("poly")) throw UserError("oracle entries need \"vector\" and \"poly\"");
    MukaiVector v = parse_vector(e["vector"].get<std::string>(), n);
    LaurentPolyQ p;
    for (auto& [k, c] : e["poly"].items()) {
      Q ek = parse_q(k);
      if (!is_int(ek)) throw UserError("oracle exponents must be integers");
      p.add(int(ek.get_num().get_si()), q_of(c, "oracle coefficient"));
    }
    if (e.contains("phase")) o.phased[{v, e["phase"].get<int>()}] = p;
    else o.table[v] = p;
  }
  return o;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

double dbl(const Q& x) { return x.get_d(); }

// x along ξ0, t = sqrt(s/(H²)) upward
std::string render_svg(const Config& c, const Box& B, const std::vector<std::pair<std::string, WallGeometry>>& walls) {
  const double W = 640, Hh = 400, m = 40;
  double xlo = dbl(B.lo[0]), xhi = dbl(B.hi[0]);
  double tmax = std::sqrt(dbl(B.s_hi / c.S.H2())), tmin = std::sqrt(dbl(B.s_lo / c.S.H2()));
  auto X = [&](double x) { return m + (x - xlo) / (xhi - xlo) * (W - 2 * m); };
  auto T = [&](double t) { return Hh - m - t / tmax * (Hh - 2 * m); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh << "\" viewBox=\"0 0 " << W
     << " " << Hh << "\">\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << num(m) << "\" y=\"" << num(m) << "\" width=\"" << num(W - 2 * m)
     << "\" height=\"" << num(Hh - 2 * m) << "\"/></clipPath></defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << Hh << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << num(m) << "\" y1=\"" << num(T(0)) << "\" x2=\"" << num(W - m) << "\" y2=\"" << num(T(0))
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << num(m) << "\" y1=\"" << num(T(0)) << "\" x2=\"" << num(m) << "\" y2=\"" << num(m)
     << "\" stroke=\"black\"/>\n";
  os << "<rect x=\"" << num(m) << "\" y=\"" << num(T(tmax)) << "\" width=\"" << num(W - 2 * m) << "\" height=\""
     << num(T(tmin) - T(tmax)) << "\" fill=\"#f2f2f2\" stroke=\"none\"/>\n";
  os << "<text x=\"" << num(W - m) << "\" y=\"" << num(Hh - m / 3) << "\" font-size=\"12\" text-anchor=\"end\">x in ["
     << to_str(B.lo[0]) << ", " << to_str(B.hi[0]) << "], t^2 = s/(H^2)</text>\n";
  os << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (auto& [id, g] : walls) {
    std::string colour = id.rfind("category", 0) == 0 ? "#1f5fa8" : "#b8421c";
    if (auto sc = slice_circle(g, c)) {
      double ry = std::sqrt(dbl(sc->radius_sq)), rx = ry / std::sqrt(dbl(sc->x_scale));
      double cx = dbl(sc->x0);
      double sx = (W - 2 * m) / (xhi - xlo), st = (Hh - 2 * m) / tmax;
      os << "<path d=\"M " << num(X(cx - rx)) << " " << num(T(0)) << " A " << num(rx * sx) << " " << num(ry * st)
         << " 0 0 1 " << num(X(cx + rx)) << " " << num(T(0)) << "\" stroke=\"" << colour << "\"><title>" << id
         << "</title></path>\n";
    } else if (g.kind == GeometryKind::Hyperplane) {
      Q k = c.S.form(*c.dir, g.normal);
      if (k == 0) continue;
      double x = dbl(g.offset / k);
      os << "<line x1=\"" << num(X(x)) << "\" y1=\"" << num(T(0)) << "\" x2=\"" << num(X(x)) << "\" y2=\"" << num(m)
         << "\" stroke=\"" << colour << "\"><title>" << id << "</title></line>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

struct Failure {
  int code;
  std::string kind, message;
};

int fail(const Failure& f) {
  json j{{"error", {{"kind", f.kind}, {"message", f.message}}}};
  std::cout << j.dump(2) << "\n";
  return f.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bridgeland wall and chamber computations on K3 and abelian surfaces"};
  app.require_subcommand(1);
  std::string config_path, v_text, beta_text, eta_text, s_text, region_text, side_text = "minus", iso_path,
                                                                            oracle_path, out_path;
  int which = 1;
  bool symbolic = false;

  auto add_config = [&](CLI::App* sub) { sub->add_option("--config,-c", config_path, "surface config JSON")->required(); };

  auto* surface = app.add_subcommand("surface", "surface data");
  auto* s_validate = surface->add_subcommand("validate", "check a surface config");
  add_config(s_validate);
  surface->require_subcommand(1);

  auto* walls = app.add_subcommand("walls", "wall enumeration");
  walls->require_subcommand(1);
  auto* w_cat = walls->add_subcommand("categories", "category walls (K3 only) meeting a box");
  add_config(w_cat);
  w_cat->add_option("--beta", beta_text, "beta as a comma list; defaults to the config");
  w_cat->add_option("--box", region_text, "x=lo:hi,s=lo:hi")->required();
  auto* w_stab = walls->add_subcommand("stability", "stability-wall candidates for v in a region");
  add_config(w_stab);
  w_stab->add_option("--v", v_text, "Mukai vector (r,[c1,...],s)")->required();
  w_stab->add_option("--beta", beta_text, "beta as a comma list; defaults to the config");
  w_stab->add_option("--region", region_text, "x=lo:hi,s=lo:hi")->required();

  auto* chamber = app.add_subcommand("chamber", "chambers");
  chamber->require_subcommand(1);
  auto* c_loc = chamber->add_subcommand("locate", "chamber signature of a point");
  add_config(c_loc);
  c_loc->add_option("--v", v_text, "Mukai vector; omit for category walls only");
  c_loc->add_option("--beta", beta_text, "beta as a comma list; defaults to the config");
  c_loc->add_option("--eta", eta_text, "absolute eta, orthogonal to H");
  c_loc->add_option("--s", s_text, "s = (omega^2)")->required();
  c_loc->add_option("--region", region_text, "walls are collected from this region; default: fixed eta, s/2..2s");

  auto* fm = app.add_subcommand("fm", "Fourier-Mukai transforms");
  fm->require_subcommand(1);
  auto* f_apply = fm->add_subcommand("apply", "image of a Mukai vector");
  add_config(f_apply);
  f_apply->add_option("--iso", iso_path, "isometry JSON")->required();
  f_apply->add_option("--v", v_text, "Mukai vector")->required();
  auto* f_param = fm->add_subcommand("param", "image of a stability parameter");
  add_config(f_param);
  f_param->add_option("--iso", iso_path, "isometry JSON")->required();
  f_param->add_option("--eta", eta_text, "absolute eta; defaults to the frame's");
  f_param->add_option("--s", s_text, "s = (omega^2)")->required();

  auto* star = app.add_subcommand("star", "star conditions");
  star->require_subcommand(1);
  auto* st_check = star->add_subcommand("check", "lattice-level check of a star condition");
  add_config(st_check);
  st_check->add_option("--v", v_text, "Mukai vector")->required();
  st_check->add_option("--beta", beta_text, "beta as a comma list; defaults to the config");
  st_check->add_option("--s", s_text, "s = (omega^2)")->required();
  st_check->add_option("--which", which, "1, 2 or 3")->check(CLI::Range(1, 3));

  auto* cross = app.add_subcommand("cross", "wall-crossing");
  cross->require_subcommand(1);
  auto* x_dec = cross->add_subcommand("decompose", "ordered decompositions of v on a wall");
  add_config(x_dec);
  auto* x_cnt = cross->add_subcommand("count", "wall-crossing sums from an oracle");
  add_config(x_cnt);
  for (auto* sub : {x_dec, x_cnt}) {
    sub->add_option("--v", v_text, "Mukai vector")->required();
    sub->add_option("--beta", beta_text, "beta as a comma list; defaults to the config");
    sub->add_option("--eta", eta_text, "absolute eta; defaults to the frame's");
    sub->add_option("--s", s_text, "s = (omega^2) on the wall")->required();
    sub->add_option("--side", side_text, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));
  }
  x_cnt->add_option("--oracle", oracle_path, "oracle JSON [{vector, poly}]")->required();
  x_cnt->add_flag("--symbolic", symbolic, "keep missing counts as named atoms");

  auto* plot = app.add_subcommand("plot", "SVG diagrams");
  plot->require_subcommand(1);
  auto* p_walls = plot->add_subcommand("walls", "walls on the slice eta = x*eta_direction");
  add_config(p_walls);
  p_walls->add_option("--v", v_text, "Mukai vector; omit for category walls only");
  p_walls->add_option("--beta", beta_text, "beta as a comma list; defaults to the config");
  p_walls->add_option("--slice", region_text, "x=lo:hi,s=lo:hi")->required();
  p_walls->add_option("--out", out_path, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail({1, "usage", e.what()});
  }

  try {
    Config c = load_config(config_path);
    std::size_t n = c.S.rho();
    NSClass beta = beta_text.empty() ? c.beta : parse_class(beta_text, n, "beta");
    auto frame = [&] { return frame_constants(c.S, beta); };
    auto vec = [&] { return parse_vector(v_text, n); };
    auto point = [&](const BetaFrame& F) {
      StabilityPoint p{eta_text.empty() ? F.eta_beta : parse_class(eta_text, n, "eta"), parse_q(s_text)};
      check_point(p, F);
      return p;
    };
    auto side = [&] { return side_text == "plus" ? Side::Plus : Side::Minus; };
    json out;

    if (s_validate->parsed()) {
      auto sig = signature(c.S.gram);
      auto F = frame_constants(c.S, c.beta);
      out = {{"valid", true},
             {"epsilon", c.S.epsilon},
             {"rho", n},
             {"H2", jq(c.S.H2())},
             {"signature", {sig.pos, sig.neg}},
             {"beta", jclass(c.beta)},
             {"r0", F.r0.get_str()},
             {"d_min", jq(F.d_min)},
             {"h_perp_basis", json::array()}};
      for (auto& g : F.L.basis) out["h_perp_basis"].push_back(jclass(g));
      if (!c.names.empty()) out["basis_names"] = c.names;
    } else if (w_cat->parsed()) {
      auto F = frame();
      Box B = parse_region(region_text, c, F.eta_beta);
      json ws = json::array();
      for (auto& w : category_walls_in_box(F, B)) {
        json x{{"u", jvec(w.u)}, {"degenerate", w.degenerate}, {"geometry", jgeometry(w.geometry, c)}};
        x["function"] = jwall_function(w.f);
        ws.push_back(x);
      }
      json th = json::array();
      for (auto& t : category_thresholds(F)) th.push_back(jq(t));
      json rb = json::array();
      for (auto& w : enumerate_R_beta(F)) rb.push_back(jvec(w.u));
      out = {{"beta", jclass(beta)}, {"r_beta", rb}, {"thresholds", th}, {"walls", ws}};
    } else if (w_stab->parsed()) {
      auto F = frame();
      Box B = parse_region(region_text, c, F.eta_beta);
      CandidateOptions opt;
      opt.fixed_beta = B.dirs.empty();
      auto res = stability_wall_candidates_ex(vec(), F, B, opt);
      json ws = json::array();
      for (auto& w : res.walls)
        ws.push_back({{"v1", jvec(w.v1)},
                      {"ray", jvec(w.ray)},
                      {"classes", jvecs(w.classes)},
                      {"function", jwall_function(w.f)},
                      {"geometry", jgeometry(w.geometry, c)}});
      out = {{"v", jvec(vec())},
             {"walls", ws},
             {"boundary_classes_dropped", res.dropped_boundary},
             {"note", "candidate walls; realizability of the destabilising classes is not verified"}};
    } else if (c_loc->parsed()) {
      auto F = frame();
      auto p = point(F);
      Box B = region_text.empty() ? fixed_beta_interval(p.eta, p.s / 2, 2 * p.s) : parse_region(region_text, c, p.eta);
      std::optional<MukaiVector> v;
      if (!v_text.empty()) v = vec();
      auto sig = locate_chamber(v, p, F, B);
      json es = json::array();
      for (auto& e : sig.entries) es.push_back({{"wall", e.id}, {"sign", e.sign}});
      out = {{"eta", jclass(p.eta)}, {"s", jq(p.s)}, {"boundary", sig.boundary}, {"signature", es}};
    } else if (f_apply->parsed()) {
      auto iso = load_iso(iso_path, c);
      auto v = vec();
      auto img = fm_image_shift(iso, v);
      auto d = beta_decompose(img, iso.target);
      out = {{"v", jvec(v)},
             {"phi", jvec(iso.apply(v))},
             {"image_shift", jvec(img)},
             {"target_decomposition",
              {{"r", jq(d.r)}, {"a", jq(d.a)}, {"d", jq(d.d)}, {"D", jclass(d.D)}}}};
    } else if (f_param->parsed()) {
      auto iso = load_iso(iso_path, c);
      auto p = point(iso.source);
      auto q = param_transform(iso, p);
      out = {{"eta", jclass(q.eta)}, {"s", jq(q.s)}, {"factor", jq(param_factor(iso, p))}};
      if (!iso.omega_hat_nef)
        out["note"] = "nefness of the transformed omega is not decided by lattice data (omega_hat_nef unset)";
    } else if (st_check->parsed()) {
      auto F = frame();
      auto v = vec();
      Q s = parse_q(s_text);
      auto rep = which == 1 ? check_star1(v, F, s) : which == 2 ? check_star2(v, F, s) : check_star3(v, F, s);
      json ws = json::array();
      for (auto& w : rep.witnesses)
        ws.push_back({{"r1", jq(w.r1)}, {"d1", jq(w.d1)}, {"a1", jq(w.a1)}, {"neg_D1_sq_bound", jq(w.neg_D1_sq_bound)}});
      out = {{"condition", rep.condition}, {"holds", rep.holds}, {"witnesses", ws}};
      if (rep.threshold_s) out["threshold_s"] = jq(*rep.threshold_s);
      if (!rep.note.empty()) out["note"] = rep.note;
    } else if (x_dec->parsed()) {
      auto F = frame();
      auto p = point(F);
      out = jdecomp(decompositions_on_wall(vec(), p, F, side()));
      out["side"] = side_name(side());
    } else if (x_cnt->parsed()) {
      auto F = frame();
      auto p = point(F);
      auto v = vec();
      auto o = load_oracle(oracle_path, n, symbolic);
      auto ds = decompositions_on_wall(v, p, F, side()).tuples;
      out = {{"side", side_name(side())}, {"wall_value", jcount(wall_value(v, o, ds, c.S))}};
      if (side() == Side::Minus) out["n_plus"] = jcount(crossing_solve(v, o, p, F));
    } else if (p_walls->parsed()) {
      if (!c.dir) throw UserError("plot walls needs eta_direction in the config");
      auto F = frame();
      Box B = parse_region(region_text, c, F.eta_beta);
      if (B.dirs.empty()) throw UserError("plot walls needs an x range");
      std::vector<std::pair<std::string, WallGeometry>> ws;
      if (c.S.epsilon == 1)
        for (auto& w : category_walls_in_box(F, B)) ws.push_back({"category " + to_str(w.u), w.geometry});
      if (!v_text.empty())
        for (auto& w : stability_wall_candidates(vec(), F, B)) ws.push_back({"stability " + to_str(w.v1), w.geometry});
      std::ofstream f(out_path);
      if (!f) throw UserError("cannot write " + out_path);
      f << render_svg(c, B, ws);
      out = {{"out", out_path}, {"walls", ws.size()}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const UserError& e) {
    return fail({1, "user", e.what()});
  } catch (const InvariantError& e) {
    return fail({2, "invariant", e.what()});
  } catch (const std::exception& e) {
    return fail({2, "internal", e.what()});
  }
}
