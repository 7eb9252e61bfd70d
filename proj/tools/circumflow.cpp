// Command-line front end for the centroid-projection dynamics library:
// orbit runs, closed-form limit predictions, convergence-order fits, a
// seeded random verification suite, and the built-in reference examples.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 numeric fault.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "circumflow/circumflow.hpp"

namespace cf = circumflow;
using cf::Real;

namespace {

struct Options {
  std::string regime = "tetra";
  int dim = 3;
  int steps = 20;
  std::uint64_t seed = 1;
  unsigned precision_bits = cf::PrecisionPolicy::kDefaultBits;
  std::string format = "json";
  std::string input;
  std::string out;
  int n = 100;
};

void add_common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--regime", o.regime, "tetra|quad|triangle|trapezoid|vertices")
      ->check(CLI::IsMember({"tetra", "quad", "triangle", "trapezoid", "vertices"}));
  cmd->add_option("--dim", o.dim, "ambient dimension for the vertices regime (2..20)")
      ->check(CLI::Range(2, 20));
  cmd->add_option("--steps", o.steps, "projection steps to run")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seed, "seed for random configurations");
  cmd->add_option("--precision-bits", o.precision_bits,
                  "binary precision of all arithmetic (>= 64)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--input", o.input,
                  "inline comma-separated parameters, or @file with JSON "
                  "{regime, vertices|params}");
  cmd->add_option("--out", o.out, "write output to a file instead of stdout");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(o.out);
    if (!f) throw cf::InputError("cannot open output file '" + o.out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cf::InputError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

cf::EdgeParams edge_params_from_values(const std::vector<Real>& v,
                                       const Real& tol) {
  if (v.size() != 6) {
    throw cf::InputError("tetra/quad input needs 6 values: d12,d13,d14,d23,d24,d34");
  }
  return cf::validate_edge_params({v[0], v[1], v[2], v[3], v[4], v[5]}, tol);
}

cf::VertexConfig config_from_vertices(cf::Regime regime, int dim,
                                      const std::vector<cf::Vec>& verts,
                                      const Real& tol) {
  switch (regime) {
    case cf::Regime::Tetra:
      return cf::VertexConfig(3, verts, tol);
    case cf::Regime::Quad:
      return cf::VertexConfig::quadrilateral(verts, tol);
    case cf::Regime::Triangle:
      return cf::VertexConfig(2, verts, tol);
    case cf::Regime::Vertices:
      return cf::VertexConfig(dim, verts, tol);
    case cf::Regime::Trapezoid:
      throw cf::InputError("trapezoid input is the abscissa pair a,b");
  }
  throw cf::InputError("unreachable regime");
}

cf::TriangleParams triangle_params_from_config(const cf::VertexConfig& c,
                                               const Real& tol) {
  const auto& v = c.vertices();
  Real a2 = cf::norm2(cf::sub(v[1], v[2]));
  Real b2 = cf::norm2(cf::sub(v[0], v[2]));
  Real c2 = cf::norm2(cf::sub(v[0], v[1]));
  return cf::triangle_params(a2, b2, c2, tol);
}

/// Builds the orbit initial state from --input (inline or @file) or, if
/// absent, from a seeded random configuration. JSON inputs may carry both
/// vertices and params; vertices win and params are cross-checked.
cf::OrbitState resolve_initial_state(cf::Regime regime, const Options& o,
                                     const cf::PrecisionPolicy& policy) {
  const Real tol = policy.tolerance();
  if (o.input.empty()) {
    switch (regime) {
      case cf::Regime::Tetra:
      case cf::Regime::Quad:
        return cf::params_from_vertices(
            cf::generate_random(regime, 0, o.seed, policy));
      case cf::Regime::Triangle:
        return triangle_params_from_config(
            cf::generate_random(regime, 0, o.seed, policy), tol);
      case cf::Regime::Vertices:
        return cf::generate_random(regime, o.dim, o.seed, policy);
      case cf::Regime::Trapezoid:
        throw cf::InputError("trapezoid regime requires --input a,b");
    }
  }

  std::vector<Real> values;
  if (o.input.front() == '@') {
    cf::ParsedInput in = cf::parse_input_json(read_file(o.input.substr(1)));
    if (in.regime && cf::parse_regime(*in.regime) != regime) {
      throw cf::InputError("JSON regime does not match --regime");
    }
    if (in.vertices) {
      cf::VertexConfig c = config_from_vertices(regime, o.dim, *in.vertices, tol);
      if (regime == cf::Regime::Vertices) {
        if (in.params) throw cf::InputError("vertices regime takes no params");
        return c;
      }
      cf::OrbitState state =
          regime == cf::Regime::Triangle
              ? cf::OrbitState(triangle_params_from_config(c, tol))
              : cf::OrbitState(cf::params_from_vertices(c));
      if (in.params) {
        // Vertices win; the redundant params must agree.
        std::vector<Real> derived;
        if (regime == cf::Regime::Triangle) {
          const auto& tp = std::get<cf::TriangleParams>(state);
          derived = {tp.s, tp.t, tp.u};
        } else {
          auto arr = std::get<cf::EdgeParams>(state).as_array();
          derived.assign(arr.begin(), arr.end());
        }
        if (in.params->size() != derived.size()) {
          throw cf::InputError("params length does not match the regime");
        }
        for (std::size_t i = 0; i < derived.size(); ++i) {
          if (abs((*in.params)[i] - derived[i]) > 64 * tol) {
            throw cf::InputError("params disagree with the supplied vertices");
          }
        }
      }
      return state;
    }
    values = *in.params;
  } else {
    values = cf::parse_inline_params(o.input);
  }

  switch (regime) {
    case cf::Regime::Tetra: {
      cf::EdgeParams p = edge_params_from_values(values, tol);
      if (cf::gamma(p) <= tol) {
        throw cf::InputError("planar parameters: use --regime quad");
      }
      return p;
    }
    case cf::Regime::Quad: {
      cf::EdgeParams p = edge_params_from_values(values, tol);
      if (cf::gamma(p) > tol) {
        throw cf::InputError("non-planar parameters: use --regime tetra");
      }
      return p;
    }
    case cf::Regime::Triangle:
      if (values.size() != 3) {
        throw cf::InputError("triangle input needs 3 values: s,t,u");
      }
      return cf::validate_triangle_params(values[0], values[1], values[2], tol);
    case cf::Regime::Trapezoid:
      if (values.size() != 2) {
        throw cf::InputError("trapezoid input needs 2 values: a,b");
      }
      return cf::make_trapezoid(values[0], values[1], tol);
    case cf::Regime::Vertices:
      throw cf::InputError("vertices regime takes @file JSON vertices or --seed");
  }
  throw cf::InputError("unreachable regime");
}

int cmd_orbit(const Options& o) {
  cf::PrecisionPolicy policy(o.precision_bits);
  cf::ScopedPrecision guard(policy);
  cf::Regime regime = cf::parse_regime(o.regime);
  cf::OrbitState init = resolve_initial_state(regime, o, policy);
  cf::OrbitResult result = cf::run_orbit(init, o.steps, regime, policy);
  if (o.format == "csv") {
    emit(o, cf::orbit_to_csv(result, regime, policy));
  } else {
    cf::json j = cf::orbit_to_json(result, regime, policy);
    j["steps_requested"] = o.steps;
    if (o.input.empty() && regime != cf::Regime::Trapezoid) j["seed"] = o.seed;
    emit(o, j.dump(2));
  }
  return 0;
}

int cmd_limit(const Options& o) {
  cf::PrecisionPolicy policy(o.precision_bits);
  cf::ScopedPrecision guard(policy);
  const Real tol = policy.tolerance();
  cf::Regime regime = cf::parse_regime(o.regime);
  unsigned digits = cf::output_digits(policy);

  if (regime == cf::Regime::Triangle) {
    cf::TriangleParams lim = cf::triangle_limit();
    if (o.format == "csv") {
      std::ostringstream ss;
      ss << "s,t,u\n"
         << cf::to_dec(lim.s, digits) << ',' << cf::to_dec(lim.t, digits) << ','
         << cf::to_dec(lim.u, digits) << '\n';
      emit(o, ss.str());
    } else {
      cf::json j;
      j["command"] = "limit";
      j["regime"] = "triangle";
      j["s"] = cf::to_dec(lim.s, digits);
      j["t"] = cf::to_dec(lim.t, digits);
      j["u"] = cf::to_dec(lim.u, digits);
      emit(o, j.dump(2));
    }
    return 0;
  }

  cf::EdgeParams p{};
  if (regime == cf::Regime::Trapezoid) {
    cf::OrbitState st = resolve_initial_state(regime, o, policy);
    const auto& tz = std::get<cf::TrapezoidState>(st);
    Real ya = sqrt(1 - tz.a * tz.a);
    Real yb = sqrt(1 - tz.b * tz.b);
    std::vector<cf::Vec> pts = {{tz.a, ya}, {tz.a, -ya}, {tz.b, yb}, {tz.b, -yb}};
    p = cf::params_from_vertices(cf::VertexConfig::quadrilateral(pts, tol));
    regime = cf::Regime::Quad;
  } else if (regime == cf::Regime::Vertices) {
    throw cf::InputError("limit predictors exist for tetra, quad, triangle, trapezoid");
  } else {
    p = std::get<cf::EdgeParams>(resolve_initial_state(regime, o, policy));
  }

  cf::LimitPrediction lim = regime == cf::Regime::Tetra
                                ? cf::tetra_limit(p, tol)
                                : cf::quad_limit(p, tol);
  if (o.format == "csv") {
    std::ostringstream ss;
    ss << "regime,d12_inf,d13_inf,d14_inf,L,rate_r\n"
       << (lim.regime == cf::LimitRegime::Tetra ? "tetra" : "quad") << ','
       << cf::to_dec(lim.d12_inf, digits) << ',' << cf::to_dec(lim.d13_inf, digits)
       << ',' << cf::to_dec(lim.d14_inf, digits) << ',' << cf::to_dec(lim.L, digits)
       << ',' << cf::to_dec(lim.rate_r, digits) << '\n';
    emit(o, ss.str());
  } else {
    emit(o, cf::limit_to_json(lim, policy).dump(2));
  }
  return 0;
}

int cmd_order(const Options& o) {
  cf::PrecisionPolicy policy(o.precision_bits);
  cf::ScopedPrecision guard(policy);
  cf::Regime regime = cf::parse_regime(o.regime);
  cf::OrbitState init = resolve_initial_state(regime, o, policy);
  cf::OrbitResult result = cf::run_orbit(init, o.steps, regime, policy);
  std::vector<Real> og;
  for (const auto& rec : result.records) {
    if (rec.og2 > 0) og.push_back(sqrt(rec.og2));
  }
  cf::OrderEstimate est = cf::estimate_order(og, policy);
  if (o.format == "csv") {
    unsigned digits = cf::output_digits(policy);
    std::ostringstream ss;
    ss << "order,constant,lambda,residual,points_used\n"
       << cf::to_dec(est.order, digits) << ',' << cf::to_dec(est.constant, digits)
       << ',' << (est.lambda ? cf::to_dec(*est.lambda, digits) : std::string())
       << ',' << cf::to_dec(est.residual, digits) << ',' << est.points_used << '\n';
    emit(o, ss.str());
  } else {
    emit(o, cf::order_to_json(est, policy).dump(2));
  }
  return 0;
}

struct VerifyCheck {
  std::string name;
  long violations = 0;
  Real worst{0};
};

struct TrialOutcome {
  bool monotone_ok = true;
  bool crossmap_ok = true;
  bool residual_ok = true;
  bool agreement_ok = true;
  Real worst_mono{0};
  Real worst_cross{0};
  Real worst_resid{0};
  Real worst_agree{0};
};

/// One seeded verification trial over a random tetrahedron: monotonicity
/// of og2 / pair products / Pt with the Lambda^2 scaling law, vertex-space
/// vs parameter-space agreement, the bordered-determinant residual, and
/// agreement of the orbit with the closed-form limit.
TrialOutcome verify_trial(std::uint64_t seed, const cf::PrecisionPolicy& policy) {
  const Real tol = policy.tolerance();
  const Real slack = 64 * tol;
  TrialOutcome t;

  cf::VertexConfig c = cf::generate_random(cf::Regime::Tetra, 3, seed, policy);
  cf::EdgeParams p = cf::params_from_vertices(c);

  Real resid = abs(cf::gamma(p) + cf::delta(p) / 2);
  t.worst_resid = resid;
  if (resid > slack) t.residual_ok = false;

  cf::OrbitResult orbit = cf::run_orbit(p, 30, cf::Regime::Tetra, policy);
  for (std::size_t i = 0; i + 1 < orbit.records.size(); ++i) {
    const auto& a = orbit.records[i];
    const auto& b = orbit.records[i + 1];
    const cf::EdgeParams& pa = std::get<cf::EdgeParams>(a.state);
    bool generic = cf::shape_class(pa, tol) == cf::ShapeClass::Generic;
    if (generic && !(b.og2 < a.og2)) {
      t.monotone_ok = false;
      t.worst_mono = std::max(t.worst_mono, Real(b.og2 - a.og2));
    }
    for (int k = 0; k < 3; ++k) {
      Real diff = (*a.pair_products)[k] - (*b.pair_products)[k];
      if (diff > slack) {
        t.monotone_ok = false;
        t.worst_mono = std::max(t.worst_mono, diff);
      }
    }
    if (*a.pt - *b.pt > slack) {
      t.monotone_ok = false;
      t.worst_mono = std::max(t.worst_mono, Real(*a.pt - *b.pt));
    }
    Real lam = cf::lambda_factor(cf::centroid_distances(pa, tol));
    Real scaling = abs(*b.pt - lam * lam * *a.pt);
    if (scaling > slack) {
      t.monotone_ok = false;
      t.worst_mono = std::max(t.worst_mono, scaling);
    }
  }

  cf::VertexConfig cv = c;
  cf::EdgeParams pp = p;
  for (int k = 0; k < 5; ++k) {
    cv = cf::step_vertices(cv, tol).first;
    pp = cf::step_params(pp, tol).next;
    auto da = cf::params_from_vertices(cv).as_array();
    auto db = pp.as_array();
    for (int i = 0; i < 6; ++i) {
      Real diff = abs(da[i] - db[i]);
      t.worst_cross = std::max(t.worst_cross, diff);
      if (diff > slack) t.crossmap_ok = false;
    }
  }

  cf::LimitPrediction lim = cf::tetra_limit(p, tol);
  Real target = Real(1) / 1000000;
  auto deviation = [&](const cf::EdgeParams& q) {
    Real dev = abs(q.d12 - lim.d12_inf);
    dev = std::max(dev, Real(abs(q.d13 - lim.d13_inf)));
    dev = std::max(dev, Real(abs(q.d14 - lim.d14_inf)));
    dev = std::max(dev, Real(abs(q.d23 - lim.d14_inf)));
    dev = std::max(dev, Real(abs(q.d24 - lim.d13_inf)));
    dev = std::max(dev, Real(abs(q.d34 - lim.d12_inf)));
    return dev;
  };
  cf::EdgeParams q = p;
  Real dev = deviation(q);
  long budget = 200;
  if (lim.rate_r < 1 && lim.rate_r > 0) {
    Real need = (log(target) - log(std::max(dev, target))) / log(lim.rate_r);
    budget = std::max<long>(budget, static_cast<long>(need) + 50);
    budget = std::min<long>(budget, 100000);
  }
  for (long k = 0; k < budget && dev > target; ++k) {
    q = cf::step_params(q, tol).next;
    dev = deviation(q);
  }
  t.worst_agree = dev;
  if (dev > target) t.agreement_ok = false;
  return t;
}

int cmd_verify(const Options& o) {
  cf::PrecisionPolicy policy(o.precision_bits);
  cf::ScopedPrecision guard(policy);
  if (o.n <= 0) throw cf::InputError("--n must be positive");

  std::vector<TrialOutcome> outcomes(o.n);
  std::vector<std::string> failures(o.n);
  std::atomic<int> next{0};
  unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  workers = std::min<unsigned>(workers, static_cast<unsigned>(o.n));

  auto work = [&]() {
    cf::ScopedPrecision thread_guard(policy);
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= o.n) break;
      try {
        outcomes[i] = verify_trial(o.seed + static_cast<std::uint64_t>(i), policy);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (int i = 0; i < o.n; ++i) {
    if (!failures[i].empty()) {
      throw cf::NumericFault("trial " + std::to_string(i) + ": " + failures[i]);
    }
  }

  VerifyCheck checks[4] = {{"monotonicity"}, {"cross_map"}, {"cm_residual"}, {"limit_agreement"}};
  for (const TrialOutcome& t : outcomes) {
    if (!t.monotone_ok) ++checks[0].violations;
    checks[0].worst = std::max(checks[0].worst, t.worst_mono);
    if (!t.crossmap_ok) ++checks[1].violations;
    checks[1].worst = std::max(checks[1].worst, t.worst_cross);
    if (!t.residual_ok) ++checks[2].violations;
    checks[2].worst = std::max(checks[2].worst, t.worst_resid);
    if (!t.agreement_ok) ++checks[3].violations;
    checks[3].worst = std::max(checks[3].worst, t.worst_agree);
  }

  long total_violations = 0;
  if (o.format == "json") {
    cf::json j;
    j["command"] = "verify";
    j["trials"] = o.n;
    j["seed"] = o.seed;
    cf::json arr = cf::json::array();
    for (const VerifyCheck& ch : checks) {
      total_violations += ch.violations;
      arr.push_back({{"check", ch.name},
                     {"violations", ch.violations},
                     {"worst", cf::to_dec(ch.worst, 8)}});
    }
    j["checks"] = std::move(arr);
    j["ok"] = total_violations == 0;
    emit(o, j.dump(2));
  } else {
    std::ostringstream ss;
    ss << "check,trials,violations,worst\n";
    for (const VerifyCheck& ch : checks) {
      total_violations += ch.violations;
      ss << ch.name << ',' << o.n << ',' << ch.violations << ','
         << cf::to_dec(ch.worst, 8) << '\n';
    }
    emit(o, ss.str());
  }
  return total_violations == 0 ? 0 : 1;
}

struct ExampleResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Reference example 1: the cyclic quadrilateral with polar angles
/// {0, arccos(0.923827833284), arccos(-0.8), -arccos(0.9)} satisfies the
/// harmonic condition, so its orbit reaches a quasi-square within 5 steps.
ExampleResult example_harmonic_quad(const cf::PrecisionPolicy& policy) {
  const Real tol = policy.tolerance();
  std::vector<Real> angles = {Real(0), acos(Real("0.923827833284")),
                              acos(Real("-0.8")), -acos(Real("0.9"))};
  std::vector<cf::Vec> pts;
  for (const Real& th : angles) pts.push_back({cos(th), sin(th)});
  cf::EdgeParams p =
      cf::params_from_vertices(cf::VertexConfig::quadrilateral(pts, tol));
  cf::LimitPrediction lim = cf::quad_limit(p, tol);

  cf::OrbitResult orbit = cf::run_orbit(p, 5, cf::Regime::Quad, policy);
  Real best(-1);
  int best_step = -1;
  const Real square[6] = {Real(2), Real(4), Real(2), Real(2), Real(4), Real(2)};
  for (const auto& rec : orbit.records) {
    auto arr = std::get<cf::EdgeParams>(rec.state).as_array();
    Real dev(0);
    for (int i = 0; i < 6; ++i) dev = std::max(dev, Real(abs(arr[i] - square[i])));
    if (best < 0 || dev < best) {
      best = dev;
      best_step = rec.step;
    }
  }
  bool pass = best < Real(1) / 1000 && lim.rate_r < Real(1) / 1000;
  std::ostringstream ss;
  ss << "max deviation from the square " << cf::to_dec(best, 6) << " at step "
     << best_step << ", predicted rate " << cf::to_dec(lim.rate_r, 6);
  return {"harmonic quadrilateral quasi-square in <= 5 steps", pass, ss.str()};
}

/// Reference example 2: trapezoid abscissas (0.955, 0.12237784429) give a
/// quasi-square after three steps.
ExampleResult example_trapezoid(const cf::PrecisionPolicy& policy) {
  const Real tol = policy.tolerance();
  cf::TrapezoidState st = cf::make_trapezoid(Real("0.955"), Real("0.12237784429"), tol);
  for (int i = 0; i < 3; ++i) st = cf::step_trapezoid(st, tol);
  Real closeness = abs(st.a + st.b);
  Real squareness = abs(st.a * st.a - Real(1) / 2);
  bool pass = closeness < Real(1) / 1000000 && squareness < Real(1) / 1000;
  std::ostringstream ss;
  ss << "|a+b| = " << cf::to_dec(closeness, 6) << ", |a^2 - 1/2| = "
     << cf::to_dec(squareness, 6) << " after 3 steps";
  return {"trapezoid quasi-square in 3 steps", pass, ss.str()};
}

/// Reference example 3: the triangle trace from (8, 20, 16) steps to
/// (8.96, 26.624, 26.2144) and reaches (9, 27, 27) within 1e-20 in at
/// most 15 steps.
ExampleResult example_triangle_trace(const cf::PrecisionPolicy& policy) {
  const Real tol = policy.tolerance();
  cf::TriangleParams tp{Real(8), Real(20), Real(16)};
  cf::OrbitResult orbit = cf::run_orbit(tp, 15, cf::Regime::Triangle, policy);
  const auto& row1 = std::get<cf::TriangleParams>(orbit.records.at(1).state);
  bool row1_ok = abs(row1.s - Real("8.96")) < Real("1e-12") &&
                 abs(row1.t - Real("26.624")) < Real("1e-12") &&
                 abs(row1.u - Real("26.2144")) < Real("1e-12");
  int reach_step = -1;
  for (const auto& rec : orbit.records) {
    const auto& t = std::get<cf::TriangleParams>(rec.state);
    Real dev = std::max(Real(abs(t.s - 9)),
                        std::max(Real(abs(t.t - 27)), Real(abs(t.u - 27))));
    if (dev < Real("1e-20")) {
      reach_step = rec.step;
      break;
    }
  }
  bool pass = row1_ok && reach_step >= 0 && reach_step <= 15;
  std::ostringstream ss;
  ss << "step 1 = (" << cf::to_dec(row1.s, 8) << ", " << cf::to_dec(row1.t, 8)
     << ", " << cf::to_dec(row1.u, 8) << "), (9,27,27) reached at step "
     << reach_step;
  return {"triangle trace from (8,20,16)", pass, ss.str()};
}

int cmd_examples(const Options& o) {
  cf::PrecisionPolicy policy(o.precision_bits);
  cf::ScopedPrecision guard(policy);
  ExampleResult results[3] = {example_harmonic_quad(policy),
                              example_trapezoid(policy),
                              example_triangle_trace(policy)};
  bool all = true;
  std::ostringstream ss;
  for (const ExampleResult& r : results) {
    all = all && r.pass;
    ss << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << '\n';
  }
  emit(o, ss.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centroid-projection dynamics on the unit sphere"};
  app.require_subcommand(1);
  Options o;

  CLI::App* orbit = app.add_subcommand("orbit", "run an orbit and emit one record per step");
  CLI::App* limit = app.add_subcommand("limit", "emit the closed-form limit prediction");
  CLI::App* verify = app.add_subcommand(
      "verify", "run the invariant suite over seeded random configurations");
  CLI::App* order = app.add_subcommand("order", "run an orbit and fit its convergence order");
  CLI::App* examples = app.add_subcommand(
      "paper-examples", "run the built-in reference examples against pinned thresholds");
  for (CLI::App* cmd : {orbit, limit, verify, order, examples}) {
    add_common_options(cmd, o);
  }
  verify->add_option("--n", o.n, "number of random trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (o.precision_bits < 64) {
      throw cf::InputError("--precision-bits must be at least 64");
    }
    if (orbit->parsed()) return cmd_orbit(o);
    if (limit->parsed()) return cmd_limit(o);
    if (verify->parsed()) return cmd_verify(o);
    if (order->parsed()) return cmd_order(o);
    if (examples->parsed()) return cmd_examples(o);
  } catch (const cf::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const cf::NumericFault& e) {
    std::cerr << "numeric fault: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
