#include "grhd/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace grhd {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config: " + field + ": " + what);
}

double get_num(const json& j, const std::string& field, double fallback,
               bool required = false) {
  const auto pos = field.rfind('.');
  const std::string key = pos == std::string::npos ? field : field.substr(pos + 1);
  if (!j.contains(key)) {
    if (required) fail(field, "missing");
    return fallback;
  }
  if (!j.at(key).is_number()) fail(field, "must be a number");
  return j.at(key).get<double>();
}

Vec3 get_vec3(const json& j, const std::string& field, Vec3 fallback) {
  const auto pos = field.rfind('.');
  const std::string key = pos == std::string::npos ? field : field.substr(pos + 1);
  if (!j.contains(key)) return fallback;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 3) fail(field, "must be an array of 3 numbers");
  return {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()};
}

SineProfile get_profile(const json& j, const std::string& field) {
  SineProfile p;
  p.base = get_num(j, field + ".base", 1.0);
  p.amp = get_num(j, field + ".amp", 0.0);
  p.wave = get_vec3(j, field + ".wave", {0, 0, 0});
  return p;
}

}  // namespace

double SineProfile::operator()(const Vec3& x) const {
  return base + amp * std::sin(2.0 * M_PI * dot(wave, x));
}

MetricProvider MetricConfig::build() const {
  if (kind == Kind::Minkowski) return MetricProvider::minkowski();
  const SineProfile a = alpha;
  const std::array<SineProfile, 3> g = gamma_diag;
  return MetricProvider::diagonal_static(
      [a](const Vec3& x) { return a(x); },
      [g](const Vec3& x) { return Vec3{g[0](x), g[1](x), g[2](x)}; });
}

void InitialConfig::primitives_at(const Vec3& x, std::mt19937_64& rng,
                                  const MetricSample& ms, const EosParams& eos,
                                  double& rho, Vec3& v_dn, double& p) const {
  (void)eos;
  switch (kind) {
    case Kind::Constant:
      rho = rho_l;
      v_dn = v_l;
      p = p_l;
      return;
    case Kind::Riemann1d:
      if (x[axis] < x0) {
        rho = rho_l;
        v_dn = v_l;
        p = p_l;
      } else {
        rho = rho_r;
        v_dn = v_r;
        p = p_r;
      }
      return;
    case Kind::SmoothWave:
      rho = rho0 + amplitude * std::sin(2.0 * M_PI * x[axis]);
      v_dn = {0, 0, 0};
      v_dn[axis] = velocity;
      p = pressure;
      return;
    case Kind::RandomAdmissible: {
      std::uniform_real_distribution<double> u(std::log(range_min),
                                               std::log(range_max));
      rho = std::exp(u(rng));
      p = std::exp(u(rng));
      // velocity uniform in the gamma-norm unit ball: map a uniform
      // Euclidean ball point y through the Cholesky factor (v_j v^j =
      // |Sigma_inner v|^2). Radius capped at 0.995 to keep the Lorentz
      // factor finite.
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      Vec3 y;
      double norm = 0.0;
      do {
        y = {normal(rng), normal(rng), normal(rng)};
        norm = std::sqrt(dot(y, y));
      } while (norm < 1e-12);
      const double r = 0.995 * std::cbrt(u01(rng));
      y = (r / norm) * y;
      const Vec5 v5 = ms.sigma.solve({0.0, y[0], y[1], y[2], 0.0});
      v_dn = {v5[1], v5[2], v5[3]};
      return;
    }
  }
}

UnstructuredMesh MeshConfig::build() const {
  switch (kind) {
    case Kind::Hex:
      return UnstructuredMesh::hex_grid(cells, lower, upper, periodic);
    case Kind::Prism:
      return UnstructuredMesh::prism_grid(cells[0], cells[1], cells[2], lower,
                                          upper);
    case Kind::Json:
      return UnstructuredMesh::load_json(path);
  }
  throw ConfigError("mesh: unknown kind");
}

fv::FvOptions RunConfig::fv_options() const {
  fv::FvOptions o;
  o.degree = fv_degree;
  o.eps = pcp_eps;
  o.a_star_slack = a_star_slack;
  o.limiter_enabled = limiter_enabled;
  o.use_ideal_bound = use_ideal_bound;
  return o;
}

fd::FdOptions RunConfig::fd_options() const {
  fd::FdOptions o;
  o.a_star_slack = a_star_slack;
  o.limiter_enabled = limiter_enabled;
  o.use_ideal_bound = use_ideal_bound;
  return o;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  RunConfig c;

  const std::string scheme = j.value("scheme", "fvpcp");
  if (scheme == "lxf1")
    c.scheme = SchemeKind::Lxf1;
  else if (scheme == "fvpcp")
    c.scheme = SchemeKind::Fvpcp;
  else if (scheme == "fdpcp")
    c.scheme = SchemeKind::Fdpcp;
  else
    fail("scheme", "unknown scheme id '" + scheme + "'");

  if (j.contains("eos")) {
    const auto& je = j.at("eos");
    const std::string kind = je.value("kind", "ideal");
    if (kind != "ideal")
      fail("eos.kind", "only 'ideal' is configurable; general EOS plug-ins "
                       "are a library API");
    c.eos_gamma = get_num(je, "eos.gamma", c.eos_gamma);
    if (!(c.eos_gamma > 1.0 && c.eos_gamma <= 2.0))
      fail("eos.gamma", "adiabatic index must lie in (1, 2]");
  }

  if (j.contains("metric")) {
    const auto& jm = j.at("metric");
    const std::string kind = jm.value("kind", "minkowski");
    if (kind == "minkowski") {
      c.metric.kind = MetricConfig::Kind::Minkowski;
    } else if (kind == "diagonal-static") {
      c.metric.kind = MetricConfig::Kind::DiagonalStatic;
      c.metric.alpha = get_profile(jm, "metric.alpha");
      if (jm.contains("gamma")) {
        const auto& jg = jm.at("gamma");
        if (!jg.is_array() || jg.size() != 3)
          fail("metric.gamma", "must be an array of 3 profiles");
        for (int a = 0; a < 3; ++a)
          c.metric.gamma_diag[a] = get_profile(jg.at(a), "metric.gamma[i]");
      } else {
        for (int a = 0; a < 3; ++a) c.metric.gamma_diag[a] = SineProfile{};
      }
    } else {
      fail("metric.kind", "unknown metric id '" + kind + "'");
    }
  }

  if (j.contains("grid")) {
    const auto& jg = j.at("grid");
    if (jg.contains("cells")) {
      const auto& a = jg.at("cells");
      if (!a.is_array() || a.size() != 3)
        fail("grid.cells", "must be an array of 3 integers");
      for (int i = 0; i < 3; ++i) c.grid.n[i] = a.at(i).get<int>();
    }
    c.grid.lower = get_vec3(jg, "grid.lower", c.grid.lower);
    c.grid.upper = get_vec3(jg, "grid.upper", c.grid.upper);
    if (jg.contains("boundary")) {
      const auto& a = jg.at("boundary");
      if (!a.is_array() || a.size() != 3)
        fail("grid.boundary", "must be an array of 3 strings");
      for (int i = 0; i < 3; ++i) {
        const std::string b = a.at(i).get<std::string>();
        if (b == "periodic")
          c.grid.bc[i] = Boundary::Periodic;
        else if (b == "outflow")
          c.grid.bc[i] = Boundary::Outflow;
        else
          fail("grid.boundary", "unknown boundary '" + b + "'");
      }
    }
    c.grid.validate();
  }

  if (j.contains("mesh")) {
    const auto& jm = j.at("mesh");
    const std::string kind = jm.value("kind", "hex");
    if (kind == "hex")
      c.mesh.kind = MeshConfig::Kind::Hex;
    else if (kind == "prism")
      c.mesh.kind = MeshConfig::Kind::Prism;
    else if (kind == "json")
      c.mesh.kind = MeshConfig::Kind::Json;
    else
      fail("mesh.kind", "unknown mesh kind '" + kind + "'");
    if (jm.contains("cells")) {
      const auto& a = jm.at("cells");
      if (!a.is_array() || a.size() != 3)
        fail("mesh.cells", "must be an array of 3 integers");
      for (int i = 0; i < 3; ++i) c.mesh.cells[i] = a.at(i).get<int>();
    }
    c.mesh.lower = get_vec3(jm, "mesh.lower", c.mesh.lower);
    c.mesh.upper = get_vec3(jm, "mesh.upper", c.mesh.upper);
    if (jm.contains("periodic")) {
      const auto& a = jm.at("periodic");
      if (!a.is_array() || a.size() != 3)
        fail("mesh.periodic", "must be an array of 3 booleans");
      for (int i = 0; i < 3; ++i) c.mesh.periodic[i] = a.at(i).get<bool>();
    }
    c.mesh.path = jm.value("path", std::string{});
    if (c.mesh.kind == MeshConfig::Kind::Json && c.mesh.path.empty())
      fail("mesh.path", "required for mesh kind 'json'");
  }

  if (j.contains("initial")) {
    const auto& ji = j.at("initial");
    const std::string kind = ji.value("kind", "constant");
    if (kind == "constant") {
      c.initial.kind = InitialConfig::Kind::Constant;
      c.initial.rho_l = get_num(ji, "initial.rho", 1.0);
      c.initial.p_l = get_num(ji, "initial.p", 1.0);
      c.initial.v_l = get_vec3(ji, "initial.v", {0, 0, 0});
    } else if (kind == "smooth-wave") {
      c.initial.kind = InitialConfig::Kind::SmoothWave;
      c.initial.rho0 = get_num(ji, "initial.rho0", 1.0);
      c.initial.amplitude = get_num(ji, "initial.amplitude", 0.2);
      c.initial.velocity = get_num(ji, "initial.velocity", 0.2);
      c.initial.pressure = get_num(ji, "initial.pressure", 1.0);
      c.initial.axis = static_cast<int>(get_num(ji, "initial.axis", 0));
    } else if (kind == "riemann-1d") {
      c.initial.kind = InitialConfig::Kind::Riemann1d;
      c.initial.axis = static_cast<int>(get_num(ji, "initial.axis", 0));
      c.initial.x0 = get_num(ji, "initial.x0", 0.5);
      if (!ji.contains("left") || !ji.contains("right"))
        fail("initial", "riemann-1d needs 'left' and 'right' states");
      const auto& l = ji.at("left");
      const auto& r = ji.at("right");
      c.initial.rho_l = get_num(l, "initial.left.rho", 1.0, true);
      c.initial.p_l = get_num(l, "initial.left.p", 1.0, true);
      c.initial.v_l = get_vec3(l, "initial.left.v", {0, 0, 0});
      c.initial.rho_r = get_num(r, "initial.right.rho", 1.0, true);
      c.initial.p_r = get_num(r, "initial.right.p", 1.0, true);
      c.initial.v_r = get_vec3(r, "initial.right.v", {0, 0, 0});
    } else if (kind == "random-admissible") {
      c.initial.kind = InitialConfig::Kind::RandomAdmissible;
      c.initial.seed =
          static_cast<unsigned long>(get_num(ji, "initial.seed", 1234));
      c.initial.range_min = get_num(ji, "initial.range_min", 1e-8);
      c.initial.range_max = get_num(ji, "initial.range_max", 1e2);
    } else {
      fail("initial.kind", "unknown initial-condition id '" + kind + "'");
    }
    if (c.initial.axis < 0 || c.initial.axis > 2)
      fail("initial.axis", "must be 0, 1 or 2");
  }

  if (j.contains("time")) {
    const auto& jt = j.at("time");
    c.t_end = get_num(jt, "time.end", c.t_end);
    c.cfl = get_num(jt, "time.cfl", c.cfl);
    if (!(c.cfl > 0.0 && c.cfl < 1.0))
      fail("time.cfl", "safety factor must be < 1 (and positive)");
    c.max_steps = static_cast<long>(get_num(jt, "time.max_steps", -1));
    if (!(c.t_end > 0.0)) fail("time.end", "must be positive");
  }

  if (j.contains("fv")) {
    c.fv_degree = static_cast<int>(get_num(j.at("fv"), "fv.degree", 2));
    if (c.fv_degree < 0 || c.fv_degree > 2)
      fail("fv.degree", "reconstruction degree must be 0, 1 or 2");
  }

  if (j.contains("pcp")) {
    const auto& jp = j.at("pcp");
    c.pcp_eps = get_num(jp, "pcp.eps", 1e-12);
    if (!(c.pcp_eps > 0.0)) fail("pcp.eps", "must be positive");
    c.a_star_slack = get_num(jp, "pcp.a_star_slack", 1.1);
    if (!(c.a_star_slack >= 1.0)) fail("pcp.a_star_slack", "must be >= 1");
    if (jp.contains("limiter")) c.limiter_enabled = jp.at("limiter").get<bool>();
    if (jp.contains("use_ideal_bound"))
      c.use_ideal_bound = jp.at("use_ideal_bound").get<bool>();
  }

  if (j.contains("output")) {
    const auto& jo = j.at("output");
    c.output.directory = jo.value("directory", c.output.directory);
    c.output.prefix = jo.value("prefix", c.output.prefix);
    c.output.cadence = static_cast<int>(get_num(jo, "output.cadence", 0));
    const std::string fmt = jo.value("snapshots", "csv");
    if (fmt == "none")
      c.output.format = SnapshotFormat::None;
    else if (fmt == "csv")
      c.output.format = SnapshotFormat::Csv;
    else if (fmt == "binary")
      c.output.format = SnapshotFormat::Binary;
    else if (fmt == "both")
      c.output.format = SnapshotFormat::Both;
    else
      fail("output.snapshots", "unknown format '" + fmt + "'");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace grhd
