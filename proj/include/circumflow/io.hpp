#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circumflow/dynamics.hpp"
#include "circumflow/limits.hpp"

namespace circumflow {

using nlohmann::json;

/// Significant digits used when serializing at a given precision; one
/// digit per ~3.3 bits keeps decimal round trips lossless.
inline unsigned output_digits(const PrecisionPolicy& policy) {
  unsigned d = policy.significand_bits() / 3;
  return d < 8 ? 8 : d;
}

/// Numbers are emitted as decimal strings: JSON doubles would truncate
/// everything below ~16 digits, destroying the quantities under test.
inline std::string to_dec(const Real& v, unsigned digits) {
  return v.str(digits);
}

inline Real real_from_string(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
}

inline std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Tetra: return "tetra";
    case Regime::Quad: return "quad";
    case Regime::Triangle: return "triangle";
    case Regime::Trapezoid: return "trapezoid";
    case Regime::Vertices: return "vertices";
  }
  return "?";
}

inline Regime parse_regime(const std::string& s) {
  if (s == "tetra") return Regime::Tetra;
  if (s == "quad") return Regime::Quad;
  if (s == "triangle") return Regime::Triangle;
  if (s == "trapezoid") return Regime::Trapezoid;
  if (s == "vertices") return Regime::Vertices;
  throw InputError("unknown regime '" + s + "'");
}

inline std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::StepLimit: return "step_limit";
    case StopReason::Converged: return "converged";
    case StopReason::StationaryProducts: return "stationary_products";
  }
  return "?";
}

inline json state_to_json(const OrbitState& state, unsigned digits) {
  json j;
  if (const EdgeParams* p = std::get_if<EdgeParams>(&state)) {
    j["d12"] = to_dec(p->d12, digits);
    j["d13"] = to_dec(p->d13, digits);
    j["d14"] = to_dec(p->d14, digits);
    j["d23"] = to_dec(p->d23, digits);
    j["d24"] = to_dec(p->d24, digits);
    j["d34"] = to_dec(p->d34, digits);
  } else if (const TriangleParams* t = std::get_if<TriangleParams>(&state)) {
    j["s"] = to_dec(t->s, digits);
    j["t"] = to_dec(t->t, digits);
    j["u"] = to_dec(t->u, digits);
  } else if (const TrapezoidState* st = std::get_if<TrapezoidState>(&state)) {
    j["a"] = to_dec(st->a, digits);
    j["b"] = to_dec(st->b, digits);
    j["g"] = to_dec(trapezoid_g(*st), digits);
  } else if (const VertexConfig* c = std::get_if<VertexConfig>(&state)) {
    json verts = json::array();
    for (const Vec& v : c->vertices()) {
      json row = json::array();
      for (const Real& x : v) row.push_back(to_dec(x, digits));
      verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
  }
  return j;
}

inline json record_to_json(const OrbitRecord& rec, unsigned digits) {
  json j;
  j["step"] = rec.step;
  j["og2"] = to_dec(rec.og2, digits);
  j["p"] = to_dec(rec.p, digits);
  j["pt"] = rec.pt ? json(to_dec(*rec.pt, digits)) : json(nullptr);
  if (rec.pair_products) {
    j["products"] = {to_dec((*rec.pair_products)[0], digits),
                     to_dec((*rec.pair_products)[1], digits),
                     to_dec((*rec.pair_products)[2], digits)};
  } else {
    j["products"] = nullptr;
  }
  j["params"] = state_to_json(rec.state, digits);
  if (rec.renorm_drift) j["drift"] = to_dec(*rec.renorm_drift, digits);
  return j;
}

inline json orbit_to_json(const OrbitResult& result, Regime regime,
                          const PrecisionPolicy& policy) {
  json j;
  j["command"] = "orbit";
  j["regime"] = regime_name(regime);
  j["precision_bits"] = policy.significand_bits();
  j["converged"] = result.converged;
  j["stop"] = stop_reason_name(result.reason);
  json records = json::array();
  unsigned digits = output_digits(policy);
  for (const OrbitRecord& rec : result.records) {
    records.push_back(record_to_json(rec, digits));
  }
  j["records"] = std::move(records);
  return j;
}

/// CSV column layouts, one fixed order per regime (see the README):
///   tetra/quad: step,og2,p,pt,prod_12_34,prod_13_24,prod_14_23,
///               d12,d13,d14,d23,d24,d34   (pt empty in the quad regime)
///   triangle:   step,og2,p,s,t,u
///   trapezoid:  step,og2,p,a,b,g
///   vertices:   step,og2,p,drift,v<i>_<k> for vertex i coordinate k
inline std::string orbit_to_csv(const OrbitResult& result, Regime regime,
                                const PrecisionPolicy& policy) {
  unsigned digits = output_digits(policy);
  std::ostringstream out;
  auto cell = [&](const Real& v) { return to_dec(v, digits); };
  switch (regime) {
    case Regime::Tetra:
    case Regime::Quad: {
      out << "step,og2,p,pt,prod_12_34,prod_13_24,prod_14_23,"
             "d12,d13,d14,d23,d24,d34\n";
      for (const OrbitRecord& r : result.records) {
        const EdgeParams& p = std::get<EdgeParams>(r.state);
        const auto& pr = *r.pair_products;
        out << r.step << ',' << cell(r.og2) << ',' << cell(r.p) << ','
            << (r.pt ? cell(*r.pt) : std::string()) << ',' << cell(pr[0]) << ','
            << cell(pr[1]) << ',' << cell(pr[2]) << ',' << cell(p.d12) << ','
            << cell(p.d13) << ',' << cell(p.d14) << ',' << cell(p.d23) << ','
            << cell(p.d24) << ',' << cell(p.d34) << '\n';
      }
      break;
    }
    case Regime::Triangle: {
      out << "step,og2,p,s,t,u\n";
      for (const OrbitRecord& r : result.records) {
        const TriangleParams& t = std::get<TriangleParams>(r.state);
        out << r.step << ',' << cell(r.og2) << ',' << cell(r.p) << ','
            << cell(t.s) << ',' << cell(t.t) << ',' << cell(t.u) << '\n';
      }
      break;
    }
    case Regime::Trapezoid: {
      out << "step,og2,p,a,b,g\n";
      for (const OrbitRecord& r : result.records) {
        const TrapezoidState& st = std::get<TrapezoidState>(r.state);
        out << r.step << ',' << cell(r.og2) << ',' << cell(r.p) << ','
            << cell(st.a) << ',' << cell(st.b) << ',' << cell(trapezoid_g(st))
            << '\n';
      }
      break;
    }
    case Regime::Vertices: {
      const auto& first = std::get<VertexConfig>(result.records.front().state);
      out << "step,og2,p,drift";
      for (std::size_t i = 0; i < first.vertices().size(); ++i) {
        for (int k = 0; k < first.dim(); ++k) out << ",v" << i << '_' << k;
      }
      out << '\n';
      for (const OrbitRecord& r : result.records) {
        const VertexConfig& c = std::get<VertexConfig>(r.state);
        out << r.step << ',' << cell(r.og2) << ',' << cell(r.p) << ','
            << (r.renorm_drift ? cell(*r.renorm_drift) : std::string());
        for (const Vec& v : c.vertices()) {
          for (const Real& x : v) out << ',' << cell(x);
        }
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

inline json limit_to_json(const LimitPrediction& lim,
                          const PrecisionPolicy& policy) {
  unsigned digits = output_digits(policy);
  json j;
  j["command"] = "limit";
  j["regime"] = lim.regime == LimitRegime::Tetra ? "tetra" : "quad";
  j["d12_inf"] = to_dec(lim.d12_inf, digits);
  j["d13_inf"] = to_dec(lim.d13_inf, digits);
  j["d14_inf"] = to_dec(lim.d14_inf, digits);
  j["L"] = to_dec(lim.L, digits);
  j["rate_r"] = to_dec(lim.rate_r, digits);
  return j;
}

inline json order_to_json(const OrderEstimate& est,
                          const PrecisionPolicy& policy) {
  unsigned digits = output_digits(policy);
  json j;
  j["command"] = "order";
  j["order"] = to_dec(est.order, digits);
  j["constant"] = to_dec(est.constant, digits);
  j["lambda"] = est.lambda ? json(to_dec(*est.lambda, digits)) : json(nullptr);
  j["residual"] = to_dec(est.residual, digits);
  j["points_used"] = est.points_used;
  return j;
}

/// Parsed form of the JSON input schema:
///   {"regime": "...", "vertices": [[...], ...]}  or
///   {"regime": "...", "params": [...]}
/// Numeric values may be JSON numbers or decimal strings; strings keep
/// full precision.
struct ParsedInput {
  std::optional<std::string> regime;
  std::optional<std::vector<Vec>> vertices;
  std::optional<std::vector<Real>> params;
};

inline Real real_from_json(const json& v) {
  if (v.is_string()) return real_from_string(v.get<std::string>());
  if (v.is_number()) return Real(v.get<double>());
  throw InputError("expected a number or decimal string");
}

inline ParsedInput parse_input_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON input: ") + e.what());
  }
  if (!j.is_object()) throw InputError("JSON input must be an object");
  ParsedInput in;
  if (j.contains("regime")) {
    if (!j["regime"].is_string()) throw InputError("regime must be a string");
    in.regime = j["regime"].get<std::string>();
  }
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array()) throw InputError("vertices must be an array");
    std::vector<Vec> verts;
    for (const json& row : j["vertices"]) {
      if (!row.is_array()) throw InputError("each vertex must be an array");
      Vec v;
      for (const json& x : row) v.push_back(real_from_json(x));
      verts.push_back(std::move(v));
    }
    in.vertices = std::move(verts);
  }
  if (j.contains("params")) {
    if (!j["params"].is_array()) throw InputError("params must be an array");
    std::vector<Real> ps;
    for (const json& x : j["params"]) ps.push_back(real_from_json(x));
    in.params = std::move(ps);
  }
  if (!in.vertices && !in.params) {
    throw InputError("JSON input needs 'vertices' or 'params'");
  }
  return in;
}

/// Splits a comma-separated inline parameter list into Reals.
inline std::vector<Real> parse_inline_params(const std::string& text) {
  std::vector<Real> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    auto first = tok.find_first_not_of(" \t");
    auto last = tok.find_last_not_of(" \t");
    if (first == std::string::npos) throw InputError("empty parameter in list");
    out.push_back(real_from_string(tok.substr(first, last - first + 1)));
  }
  if (out.empty()) throw InputError("empty parameter list");
  return out;
}

}  // namespace circumflow
