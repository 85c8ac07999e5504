#include "harmfield/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "harmfield/first_variation.hpp"
#include "harmfield/harmonic.hpp"
#include "harmfield/surfaces2d.hpp"

namespace harmfield::cli {

namespace {

// ---------------------------------------------------------------------------
// Reading

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError(what + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw SchemaError(what + " must be an integer");
  return j.get<int>();
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + " is missing \"" + key + "\"");
  return j.at(key);
}

Eigen::VectorXd vector_of(const Json& j, int size, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw SchemaError(what + " must be an array of " + std::to_string(size) + " numbers");
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = number(j[i], what);
  return v;
}

Eigen::MatrixXd matrix_of(const Json& j, int size, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw SchemaError(what + " must have " + std::to_string(size) + " rows");
  Eigen::MatrixXd m(size, size);
  for (int i = 0; i < size; ++i) m.row(i) = vector_of(j[i], size, what).transpose();
  return m;
}

Quadric parse_quadric(const Json& j) {
  const std::string kind = member(j, "kind", "quadric").is_string()
                               ? j.at("kind").get<std::string>()
                               : throw SchemaError("quadric.kind must be a string");
  const int n = integer(member(j, "n", "quadric"), "quadric.n");
  const int v = integer(member(j, "v", "quadric"), "quadric.v");
  QuadricKind k;
  if (kind == "sphere") {
    k = QuadricKind::Sphere;
  } else if (kind == "hyperbolic") {
    k = QuadricKind::Hyperbolic;
  } else {
    throw SchemaError("quadric.kind must be \"sphere\" or \"hyperbolic\"");
  }
  try {
    return Quadric(k, n, v);
  } catch (const PreconditionError& e) {
    throw SchemaError(std::string("quadric: ") + e.what());
  }
}

PolyVector<double> parse_polys(const Json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw SchemaError(what + " must list " + std::to_string(dim) + " component polynomials");
  PolyVector<double> out;
  for (const auto& component : j) {
    if (!component.is_array()) throw SchemaError(what + ": each component is an array of terms");
    Polynomial<double> p(dim);
    for (const auto& term : component) {
      const double coef = number(member(term, "coef", what), what + " coefficient");
      const Json& exp = member(term, "exp", what);
      if (!exp.is_array() || static_cast<int>(exp.size()) != dim)
        throw SchemaError(what + ": exponent vectors need " + std::to_string(dim) + " entries");
      std::vector<int> e;
      for (const auto& k : exp) {
        const int v = integer(k, what + " exponent");
        if (v < 0) throw SchemaError(what + ": exponents must be non-negative");
        e.push_back(v);
      }
      p.add_term(e, coef);
    }
    out.push_back(std::move(p));
  }
  return out;
}

VectorField parse_field(const Json& j, const Quadric& m, const SamplingOptions& sampling,
                        double identity_tol) {
  const Json& type_j = member(j, "type", "field");
  if (!type_j.is_string()) throw SchemaError("field.type must be a string");
  const std::string type = type_j.get<std::string>();
  const int dim = m.ambient_dim();
  if (type == "cgf") return ConformalGradientField(m, vector_of(member(j, "pole", "field"), dim, "field.pole"));
  if (type == "killing") {
    Eigen::MatrixXd a;
    if (j.contains("matrix")) {
      a = matrix_of(j.at("matrix"), dim, "field.matrix");
    } else if (j.contains("abc")) {
      if (m.dim() != 2) throw SchemaError("field.abc is only meaningful on 2-dimensional quadrics");
      const Eigen::VectorXd abc = vector_of(j.at("abc"), 3, "field.abc");
      a = Killing2D(m, abc(0), abc(1), abc(2)).matrix();
    } else {
      throw SchemaError("Killing field needs \"matrix\" or \"abc\"");
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (!is_skew(a, m.ambient(), 1e-12 * scale))
      throw SchemaError("field.matrix is not skew for signature " + m.ambient().to_string());
    return KillingField(m, a, 1e-12 * scale);
  }
  if (type == "poly") {
    AmbientPolyField v(m, parse_polys(member(j, "polys", "field"), dim, "field.polys"));
    const double r = v.tangency_residual(sample_points(m, sampling));
    if (r > identity_tol) throw SchemaError("polynomial field is not tangent to the quadric");
    return v;
  }
  throw SchemaError("field.type must be cgf, killing or poly");
}

// ---------------------------------------------------------------------------
// Writing

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i) == 0.0 ? 0.0 : v(i));
  return a;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i).transpose()));
  return a;
}

Json params_json(const MetricParams& pq) { return Json{{"p", pq.p}, {"q", pq.q}}; }

Json pairs_json(const std::vector<ParamPair>& pairs) {
  Json a = Json::array();
  for (const auto& [p, q] : pairs) a.push_back(Json{{"p", rational_to_json(p)}, {"q", rational_to_json(q)}});
  return a;
}

Json check(const std::string& name, bool pass, double residual, double tol, int samples) {
  return Json{{"name", name}, {"pass", pass}, {"max_residual", residual}, {"tolerance", tol},
              {"samples", samples}};
}

// ---------------------------------------------------------------------------
// Commands

struct Context {
  FieldSpec spec;
  Overrides overrides;
  std::vector<Eigen::VectorXd> points;

  const VectorField& field() const {
    if (!spec.field) throw SchemaError("spec has no field block");
    return *spec.field;
  }
  MetricParams params() const {
    MetricParams pq;
    if (spec.params) pq = *spec.params;
    else if (!overrides.p || !overrides.q)
      throw SchemaError("metric parameters missing: give params in the spec or --p and --q");
    if (overrides.p) pq.p = *overrides.p;
    if (overrides.q) pq.q = *overrides.q;
    return pq;
  }
  double harmonic_tol(const VectorField& f) const {
    if (overrides.tol) return *overrides.tol;
    if (spec.raw.contains("tolerances") && spec.raw["tolerances"].contains("harmonic"))
      return spec.tolerances.harmonic;
    return std::holds_alternative<AmbientPolyField>(f) ? kGenericTol : kClosedFormTol;
  }
  double identity_tol() const { return spec.tolerances.identity; }
};

Json harmonic_verdict(const VectorField& f, const MetricParams& pq,
                      const std::vector<Eigen::VectorXd>& points, double tol) {
  const HarmonicityReport r = is_pq_harmonic(f, pq, points, tol);
  return check("harmonic", r.harmonic, r.max_residual, tol, r.samples);
}

std::vector<Eigen::VectorXd> points_for(const Quadric& m, const SamplingOptions& s) {
  return sample_points(m, s);
}

bool all_checks_pass(const Json& checks) {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

CommandResult cmd_verify(Context& ctx, Json& report) {
  const VectorField& f = ctx.field();
  const MetricParams pq = ctx.params();
  report["params"] = params_json(pq);
  Json checks = Json::array();
  checks.push_back(harmonic_verdict(f, pq, ctx.points, ctx.harmonic_tol(f)));
  double weitz = 0.0;
  for (const auto& x : ctx.points) weitz = std::max(weitz, weitzenbock_residual(f, x));
  checks.push_back(check("weitzenbock", weitz <= ctx.identity_tol(), weitz, ctx.identity_tol(),
                         static_cast<int>(ctx.points.size())));
  if (const auto* v = std::get_if<AmbientPolyField>(&f)) {
    const double t = v->tangency_residual(ctx.points);
    checks.push_back(check("tangency", t <= ctx.identity_tol(), t, ctx.identity_tol(),
                           static_cast<int>(ctx.points.size())));
  }
  report["checks"] = checks;
  const bool pass = all_checks_pass(checks);
  report["pass"] = pass;
  return {report, pass ? kExitPass : kExitFail};
}

CommandResult cmd_params(Context& ctx, Json& report) {
  const VectorField& f = ctx.field();
  const Quadric& m = ctx.spec.quadric;
  Json result;
  bool pass = true;
  if (const auto* c = std::get_if<ConformalGradientField>(&f)) {
    const Rational mu = rationalize(c->mu());
    const auto solved = solve_metric_params(cgf_data<Rational>(m.dim(), m.epsilon(), mu));
    const auto closed = classify_cgf(m.dim(), mu);
    pass = solved == closed;
    result = Json{{"kind", "cgf"}, {"mu", rational_to_json(mu)}, {"solutions", pairs_json(solved)},
                  {"classification", pairs_json(closed)}, {"agree", pass}};
  } else if (const auto* k = std::get_if<KillingField>(&f)) {
    const auto lambda = preharmonic_lambda(*k);
    if (!lambda) throw NotPreharmonic("Killing field is not preharmonic: A^3 is not a multiple of A");
    const Rational lam = rationalize(*lambda, 1e-10);
    const Rational norm = rationalize(k->pseudo_length(), 1e-10);
    const auto solved = solve_metric_params(killing_data<Rational>(m.dim(), m.epsilon(), lam, norm));
    result = Json{{"kind", "killing"}, {"lambda", rational_to_json(lam)},
                  {"pseudo_length", rational_to_json(norm)}, {"solutions", pairs_json(solved)}};
    if (m.dim() == 2) {
      const auto cond = killing_harmonic_condition_2d(m.epsilon(), *lambda, 1e-10);
      std::vector<ParamPair> two_d;
      if (cond) two_d.push_back(*cond);
      result["condition_2d"] = pairs_json(two_d);
      pass = two_d == solved;
      result["agree"] = pass;
    }
  } else {
    throw PreconditionError("params: metric parameters are solved for cgf and Killing fields only");
  }
  report["result"] = result;
  report["pass"] = pass;
  return {report, pass ? kExitPass : kExitFail};
}

struct Step {
  std::string name;
  VectorField field;
};

Eigen::MatrixXd anti_isometry_from(const Quadric& m, Quadric* target) {
  const int n = m.dim();
  if (m.kind() == QuadricKind::Hyperbolic) {
    *target = Quadric::sphere(n, n - m.index());
    return canonical_anti_isometry(n, m.index());
  }
  *target = Quadric::hyperbolic(n, n - m.index());
  return canonical_anti_isometry(n, n - m.index()).transpose();
}

CommandResult cmd_twist(Context& ctx, Json& report) {
  const Quadric& m = ctx.spec.quadric;
  std::string target = ctx.overrides.target.value_or(is_neutral_surface(m) ? "j+anti" : "anti");
  if (target != "j" && target != "anti" && target != "j+anti")
    throw SchemaError("--target must be j, anti or j+anti");
  std::vector<Step> steps;
  VectorField current = ctx.field();
  if (target != "anti") {
    current = j_twist(current);
    steps.push_back({"j", current});
  }
  if (target != "j") {
    Quadric to = m;
    const Eigen::MatrixXd p = anti_isometry_from(quadric_of(current), &to);
    current = push_forward(current, p, to);
    steps.push_back({"anti", current});
  }

  Json steps_json = Json::array();
  for (const auto& s : steps)
    steps_json.push_back(Json{{"step", s.name}, {"quadric", quadric_to_json(quadric_of(s.field))},
                              {"field", field_to_json(s.field)}});
  report["steps"] = steps_json;

  const Quadric& out_quadric = quadric_of(current);
  Json out_spec{{"quadric", quadric_to_json(out_quadric)}, {"field", field_to_json(current)}};
  bool pass = true;
  const bool have_params = ctx.spec.params || (ctx.overrides.p && ctx.overrides.q);
  if (have_params) {
    const MetricParams pq = ctx.params();
    report["params"] = params_json(pq);
    out_spec["params"] = params_json(pq);
    report["before"] = harmonic_verdict(ctx.field(), pq, ctx.points, ctx.harmonic_tol(ctx.field()));
    const auto out_points = points_for(out_quadric, ctx.spec.sampling);
    Json after = harmonic_verdict(current, pq, out_points, ctx.harmonic_tol(current));
    pass = after.at("pass").get<bool>();
    report["after"] = after;
  }
  report["field_spec"] = out_spec;
  report["pass"] = pass;
  return {report, pass ? kExitPass : kExitFail};
}

Killing2D killing_2d_of(const Context& ctx) {
  const auto* k = std::get_if<KillingField>(&ctx.field());
  if (!k) throw PreconditionError("this command needs a Killing field");
  return Killing2D::from_matrix(ctx.spec.quadric, k->matrix());
}

CommandResult cmd_fixed_points(Context& ctx, Json& report) {
  const Killing2D k = killing_2d_of(ctx);
  const FixedPointReport r = fixed_points(k);
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back(vector_json(p));
  Json ideal = Json::array();
  for (const auto& p : r.ideal_points) ideal.push_back(vector_json(p));
  report["result"] = Json{{"abc", {k.a, k.b, k.c}}, {"lambda", r.lambda},
                          {"category", to_string(r.category)}, {"points", pts}, {"ideal_points", ideal}};
  report["pass"] = true;
  return {report, kExitPass};
}

CommandResult cmd_normal_form(Context& ctx, Json& report) {
  const Killing2D k = killing_2d_of(ctx);
  const NormalFormResult r = normal_form(k);
  const double tol = ctx.overrides.tol.value_or(1e-10);
  Json checks = Json::array();
  checks.push_back(check("conjugation", r.conjugation_residual <= tol, r.conjugation_residual, tol, 1));
  checks.push_back(check("isometry", r.isometry_residual <= tol, r.isometry_residual, tol, 1));
  report["result"] = Json{{"abc", {k.a, k.b, k.c}}, {"lambda", r.lambda},
                          {"normal_form", matrix_json(r.normal)},
                          {"conjugator", matrix_json(r.conjugator)}};
  report["checks"] = checks;
  const bool pass = all_checks_pass(checks);
  report["pass"] = pass;
  return {report, pass ? kExitPass : kExitFail};
}

CommandResult cmd_first_variation(Context& ctx, Json& report) {
  const VectorField& f = ctx.field();
  const Quadric& m = ctx.spec.quadric;
  const Json& var = member(ctx.spec.raw, "variation", "spec");
  const PolyVector<double> rho_ambient =
      parse_polys(member(var, "rho", "variation"), m.ambient_dim(), "variation.rho");
  const AmbientPolyField rho = tangential_poly_field(m, rho_ambient);
  const Json& pj = member(var, "patch", "variation");
  GraphPatch patch;
  patch.solved = integer(member(pj, "solved", "variation.patch"), "patch.solved");
  if (pj.contains("branch")) patch.branch = integer(pj["branch"], "patch.branch") < 0 ? -1 : 1;
  patch.center = vector_of(member(pj, "center", "variation.patch"), m.dim(), "patch.center");
  patch.half_width = number(member(pj, "half_width", "variation.patch"), "patch.half_width");
  if (pj.contains("order")) patch.order = integer(pj["order"], "patch.order");
  FirstVariationOptions options;
  options.params = ctx.params();
  if (var.contains("dt")) options.dt = number(var["dt"], "variation.dt");

  const FirstVariationResult r = first_variation(f, rho, patch, options);
  const double rel_tol = ctx.overrides.tol.value_or(1e-3);
  const double abs_tol = 1e-5;
  // A vanishing analytic side means a critical point: compare absolutely.
  const bool critical = std::abs(r.analytic) < 1e-8;
  const bool pass = critical ? std::abs(r.numeric) < abs_tol : r.relative_error() < rel_tol;
  report["params"] = params_json(options.params);
  report["result"] = Json{{"numeric", r.numeric}, {"analytic", r.analytic},
                          {"relative_error", r.relative_error()}, {"nodes", r.nodes},
                          {"criterion", critical ? "absolute" : "relative"},
                          {"tolerance", critical ? abs_tol : rel_tol}};
  report["pass"] = pass;
  return {report, pass ? kExitPass : kExitFail};
}

CommandResult cmd_energy(Context& ctx, Json& report) {
  const VectorField& f = ctx.field();
  const MetricParams pq = ctx.params();
  report["params"] = params_json(pq);
  Json values = Json::array();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  int singular = 0;
  for (const auto& x : ctx.points) {
    try {
      const double ev = vertical_energy_density(f, x, pq);
      const double e = ev + 0.5 * ctx.spec.quadric.dim();
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      values.push_back(Json{{"x", vector_json(x)}, {"energy", e}, {"vertical", ev}});
    } catch (const Singular&) {
      ++singular;
      values.push_back(Json{{"x", vector_json(x)}, {"singular", true}});
    }
  }
  report["result"] = Json{{"horizontal", 0.5 * ctx.spec.quadric.dim()}, {"min", lo}, {"max", hi},
                          {"singular_points", singular}, {"values", values}};
  report["pass"] = true;
  return {report, kExitPass};
}

CommandResult cmd_catalog(Context& ctx, Json& report) {
  std::vector<Quadric> quadrics;
  if (ctx.spec.raw.contains("quadric")) quadrics.push_back(ctx.spec.quadric);
  else quadrics = two_dim_quadrics();
  MetricParams pq{3.0, -0.5};
  if (ctx.overrides.p) pq.p = *ctx.overrides.p;
  if (ctx.overrides.q) pq.q = *ctx.overrides.q;
  report["params"] = params_json(pq);
  Json entries = Json::array();
  bool pass = true;
  for (const auto& m : quadrics) {
    Json entry{{"quadric", quadric_to_json(m)}, {"name", m.name()}};
    const auto k = harmonic_killing_catalog(m);
    if (!k) {
      entry["representative"] = nullptr;
      entries.push_back(entry);
      continue;
    }
    const VectorField f = k->field();
    const auto points = points_for(m, ctx.spec.sampling);
    const HarmonicityReport closed = is_pq_harmonic(f, pq, points, kClosedFormTol);
    const HarmonicityReport generic = is_pq_harmonic(f, pq, points, kGenericTol, Route::Generic);
    entry["representative"] = Json{{"abc", {k->a, k->b, k->c}}, {"matrix", matrix_json(k->matrix())}};
    entry["lambda"] = lambda_2d(*k);
    entry["epsilon"] = m.epsilon();
    entry["checks"] = Json::array({check("harmonic_closed_form", closed.harmonic, closed.max_residual,
                                         kClosedFormTol, closed.samples),
                                   check("harmonic_generic", generic.harmonic, generic.max_residual,
                                         kGenericTol, generic.samples)});
    pass = pass && closed.harmonic && generic.harmonic;
    entries.push_back(entry);
  }
  report["result"] = entries;
  report["pass"] = pass;
  return {report, pass ? kExitPass : kExitFail};
}

int exit_code_for(const Error& e) {
  const std::string kind = e.kind();
  if (kind == "SchemaError" || kind == "DimensionMismatch" || kind == "PreconditionError")
    return kExitInput;
  return kExitFail;
}

}  // namespace

Json rational_to_json(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  auto as_json = [](const boost::multiprecision::cpp_int& v) -> Json {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
      return v.convert_to<long long>();
    return v.str();
  };
  return Json{{"num", as_json(numerator(r))}, {"den", as_json(denominator(r))}};
}

Json quadric_to_json(const Quadric& m) {
  return Json{{"kind", m.kind() == QuadricKind::Sphere ? "sphere" : "hyperbolic"},
              {"n", m.dim()},
              {"v", m.index()}};
}

Json field_to_json(const VectorField& field) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConformalGradientField>) {
          return Json{{"type", "cgf"}, {"pole", vector_json(f.pole())}};
        } else if constexpr (std::is_same_v<T, KillingField>) {
          return Json{{"type", "killing"}, {"matrix", matrix_json(f.matrix())}};
        } else {
          Json polys = Json::array();
          for (const auto& c : f.components()) {
            Json terms = Json::array();
            for (const auto& [e, coef] : c.terms()) terms.push_back(Json{{"coef", coef}, {"exp", e}});
            polys.push_back(terms);
          }
          return Json{{"type", "poly"}, {"polys", polys}};
        }
      },
      field);
}

std::uint64_t resolve_seed(const Overrides& overrides, const Json& spec) {
  if (overrides.seed) return *overrides.seed;
  if (spec.is_object() && spec.contains("sampling") && spec["sampling"].contains("seed")) {
    const Json& s = spec["sampling"]["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw SchemaError("sampling.seed must be a non-negative integer");
    return s.get<std::uint64_t>();
  }
  if (const char* env = std::getenv("HARMFIELD_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw SchemaError("HARMFIELD_SEED must be a non-negative integer");
  }
  return SamplingOptions{}.seed;
}

FieldSpec parse_spec(const Json& spec, bool require_field) {
  if (!spec.is_object()) throw SchemaError("spec must be a JSON object");
  FieldSpec out;
  out.raw = spec;
  if (spec.contains("sampling")) {
    const Json& s = spec["sampling"];
    if (s.contains("count")) {
      out.sampling.count = integer(s["count"], "sampling.count");
      if (out.sampling.count < 1) throw SchemaError("sampling.count must be positive");
    }
  }
  out.sampling.seed = resolve_seed({}, spec);
  if (spec.contains("tolerances")) {
    const Json& t = spec["tolerances"];
    if (t.contains("harmonic")) out.tolerances.harmonic = number(t["harmonic"], "tolerances.harmonic");
    if (t.contains("identity")) out.tolerances.identity = number(t["identity"], "tolerances.identity");
  }
  if (spec.contains("params")) {
    const Json& p = spec["params"];
    out.params = MetricParams{number(member(p, "p", "params"), "params.p"),
                              number(member(p, "q", "params"), "params.q")};
  }
  if (spec.contains("quadric")) {
    out.quadric = parse_quadric(spec["quadric"]);
  } else if (require_field) {
    throw SchemaError("spec is missing \"quadric\"");
  }
  if (spec.contains("field")) {
    if (!spec.contains("quadric")) throw SchemaError("a field needs a quadric");
    out.field = parse_field(spec["field"], out.quadric, out.sampling, out.tolerances.identity);
  } else if (require_field) {
    throw SchemaError("spec is missing \"field\"");
  }
  return out;
}

CommandResult run_command(const std::string& command, const Json& spec, const Overrides& overrides) {
  Json report;
  report["command"] = command;
  Json provenance{{"version", kVersion}};
  try {
    static const std::vector<std::string> known = {"verify",      "params",          "twist",
                                                   "fixed-points", "normal-form",    "first-variation",
                                                   "energy",      "catalog"};
    if (std::find(known.begin(), known.end(), command) == known.end())
      throw SchemaError("unknown command \"" + command + "\"");

    Context ctx;
    ctx.overrides = overrides;
    ctx.spec = parse_spec(spec, command != "catalog");
    if (overrides.samples) {
      if (*overrides.samples < 1) throw SchemaError("--samples must be positive");
      ctx.spec.sampling.count = *overrides.samples;
    }
    ctx.spec.sampling.seed = resolve_seed(overrides, spec);
    provenance["seed"] = ctx.spec.sampling.seed;
    provenance["samples"] = ctx.spec.sampling.count;
    provenance["tolerances"] = Json{{"harmonic", overrides.tol.value_or(ctx.spec.tolerances.harmonic)},
                                    {"identity", ctx.spec.tolerances.identity}};
    if (ctx.spec.field) {
      report["quadric"] = quadric_to_json(ctx.spec.quadric);
      report["field"] = field_to_json(*ctx.spec.field);
      ctx.points = points_for(ctx.spec.quadric, ctx.spec.sampling);
    }

    CommandResult result;
    if (command == "verify") result = cmd_verify(ctx, report);
    else if (command == "params") result = cmd_params(ctx, report);
    else if (command == "twist") result = cmd_twist(ctx, report);
    else if (command == "fixed-points") result = cmd_fixed_points(ctx, report);
    else if (command == "normal-form") result = cmd_normal_form(ctx, report);
    else if (command == "first-variation") result = cmd_first_variation(ctx, report);
    else if (command == "energy") result = cmd_energy(ctx, report);
    else result = cmd_catalog(ctx, report);
    result.report["provenance"] = provenance;
    return result;
  } catch (const Error& e) {
    report["error"] = Json{{"kind", e.kind()}, {"message", e.what()}};
    report["pass"] = false;
    report["provenance"] = provenance;
    return {report, exit_code_for(e)};
  }
}

namespace {

void render(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  const bool scalar_array =
      j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
  if (j.is_array() && !scalar_array) {
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << j.dump() << '\n';
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(report, "", out);
  return out.str();
}

}  // namespace harmfield::cli
