#pragma once

// Verification records: every rigidity statement checked by this library is
// reduced to a signed margin (positive = slack, negative = violation) and a
// tolerance; a record passes iff margin >= -tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gprig/error.hpp"
#include "gprig/grid.hpp"
#include "gprig/model.hpp"
#include "gprig/parallel.hpp"
#include "gprig/solver1d.hpp"
#include "gprig/solvernd.hpp"

namespace gprig {

using Json = nlohmann::json;

inline constexpr std::array<std::string_view, 13> kTheoremTags = {
    "T1.1-monotone-symmetry", "C1.2-uniqueness",  "T1.3-bounds-i",          "T1.3-bounds-ii",
    "T1.3-bounds-iii",        "C1.4-sharp-limit", "T-liouville-sub1",       "T-liouville-eq1",
    "T-lambda3-closedform",   "T-monot3-i",       "T-sum-vs-one",           "P-ac-decomposition",
    "R-counterexample",
};

inline bool is_theorem_tag(std::string_view tag) {
  return std::find(kTheoremTags.begin(), kTheoremTags.end(), tag) != kTheoremTags.end();
}

struct CheckRecord {
  std::string name;
  std::string theorem;
  bool pass = false;
  double margin = 0.0;
  double tolerance = 0.0;
  Json params = Json::object();

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

inline CheckRecord make_record(std::string name, std::string_view theorem, double margin, double tolerance,
                               Json params = Json::object()) {
  if (!is_theorem_tag(theorem)) {
    throw Error(ErrorKind::InvalidArgument, "unknown theorem tag '" + std::string(theorem) + "'");
  }
  if (!std::isfinite(margin)) margin = -1.0;
  return {std::move(name), std::string(theorem), margin >= -tolerance, margin, tolerance, std::move(params)};
}

/// Marks a record failed for a reason its margin does not capture (a run that
/// did not converge), keeping margin >= -tolerance <=> pass.
inline void invalidate(CheckRecord& r) {
  r.margin = std::min(r.margin, -1.0 - r.tolerance);
  r.pass = false;
}

/// A record for a stage that threw before it could measure anything.
inline CheckRecord failed_record(std::string name, std::string_view theorem, const std::string& what,
                                 Json params = Json::object()) {
  params["error"] = what;
  return make_record(std::move(name), theorem, -1.0, 0.0, std::move(params));
}

struct VerifyReport {
  std::string version = "1";
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;

  bool overall_pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
  }
  std::string summary() const {
    if (records.empty()) return "no checks run";
    const auto failed = std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; });
    return std::to_string(records.size() - failed) + "/" + std::to_string(records.size()) + " checks passed";
  }
  const CheckRecord* find(std::string_view name) const {
    for (const auto& r : records) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
  void append(const std::vector<CheckRecord>& more) { records.insert(records.end(), more.begin(), more.end()); }

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

inline void to_json(Json& j, const CheckRecord& r) {
  j = Json{{"name", r.name},           {"theorem", r.theorem},     {"pass", r.pass},
           {"margin", r.margin},       {"tolerance", r.tolerance}, {"params", r.params}};
}

inline void from_json(const Json& j, CheckRecord& r) {
  j.at("name").get_to(r.name);
  j.at("theorem").get_to(r.theorem);
  j.at("pass").get_to(r.pass);
  j.at("margin").get_to(r.margin);
  j.at("tolerance").get_to(r.tolerance);
  r.params = j.at("params");
  if (!is_theorem_tag(r.theorem)) throw Error(ErrorKind::InvalidArgument, "unknown theorem tag '" + r.theorem + "'");
  if (r.pass != (r.margin >= -r.tolerance)) {
    throw Error(ErrorKind::InvalidArgument, "record '" + r.name + "': pass flag contradicts its margin");
  }
}

inline void to_json(Json& j, const VerifyReport& r) {
  j = Json{{"version", r.version}, {"seed", r.seed}, {"records", r.records}};
}

inline void from_json(const Json& j, VerifyReport& r) {
  j.at("version").get_to(r.version);
  j.at("seed").get_to(r.seed);
  r.records = j.at("records").get<std::vector<CheckRecord>>();
}

inline std::string serialize(const VerifyReport& r) { return Json(r).dump(2); }

inline VerifyReport parse_report(const std::string& text) {
  try {
    return Json::parse(text).get<VerifyReport>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Profile checks

struct VerifyTolerances {
  double slack_factor = 10.0;  // discrete slack is slack_factor * h^2
  double closed_form = 5e-3;   // sup-distance to the explicit L = 3 profile
};

/// Interior residual of w'' + w - w^3 with the 3-point second difference.
inline double allen_cahn_residual(std::span<const double> w, double h) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    m = std::max(m, std::abs((w[i - 1] - 2.0 * w[i] + w[i + 1]) / (h * h) + allen_cahn_reaction(w[i])));
  }
  return m;
}

/// Limits (u - v)(+-L) = +-1, up to 10 h^2 + exp(-L).
inline CheckRecord verify_sharp_limit(const ProfilePair& prof, double slack_factor = 10.0) {
  const std::size_t n = prof.size();
  const double h = prof.grid.h();
  const double right = prof.u[n - 1] - prof.v[n - 1], left = prof.u[0] - prof.v[0];
  const double defect = std::max(std::abs(right - 1.0), std::abs(left + 1.0));
  const double tol = slack_factor * h * h + std::exp(-prof.grid.half_length());
  return make_record("sharp-limit", "C1.4-sharp-limit", -defect, tol,
                     {{"L", prof.grid.half_length()}, {"n", n}, {"left_limit", left}, {"right_limit", right},
                      {"boundary_defect", defect}});
}

inline std::vector<CheckRecord> verify_bounds(const Params& p, std::span<const double> u, std::span<const double> v,
                                              double slack, const std::string& prefix, Json params) {
  const BoundReport b = check_bounds(p, u, v, slack);
  Json pi = params;
  pi["max_abs_u"] = b.max_abs_u;
  pi["max_abs_v"] = b.max_abs_v;
  std::vector<CheckRecord> out;
  out.push_back(make_record(prefix + "bounds-i", "T1.3-bounds-i", b.margin_i, slack, pi));
  Json pr = params;
  pr["max_norm2"] = b.max_norm2;
  pr["bound"] = b.regime_bound;
  if (b.unit_or_above) {
    out.push_back(make_record(prefix + "bounds-ii", "T1.3-bounds-ii", b.margin_regime, slack, pr));
  } else {
    out.push_back(make_record(prefix + "bounds-iii", "T1.3-bounds-iii", b.margin_regime, slack, pr));
  }
  return out;
}

/// All profile-level checks that apply to the coupling's regime.
inline VerifyReport verify_profile(const Params& p, const ProfilePair& prof, const VerifyTolerances& tol = {}) {
  prof.validate();
  VerifyReport rep;
  const double h = prof.grid.h();
  const double slack = tol.slack_factor * h * h;
  const Json base{{"lambda", p.lambda()}, {"L", prof.grid.half_length()}, {"n", prof.size()}};

  rep.append(verify_bounds(p, prof.u, prof.v, slack, "", base));

  if (p.segregated()) {
    const MonotoneReport m = check_discrete_monotone(prof);
    Json pm = base;
    pm["min_du"] = m.min_du;
    pm["max_dv"] = m.max_dv;
    rep.records.push_back(make_record("monotone", "T1.1-monotone-symmetry", std::min(m.min_du, -m.max_dv), 0.0, pm));
    rep.records.push_back(verify_sharp_limit(prof, tol.slack_factor));
    rep.records.back().params["lambda"] = p.lambda();

    const SumReport s = check_sum_vs_one(p, prof, slack);
    Json ps = base;
    ps["min_sum"] = s.min_sum;
    ps["max_sum"] = s.max_sum;
    ps["verdict"] = to_string(s.expected);
    if (s.expected == SumOrdering::Equal) {
      const double dev = std::max(std::abs(s.min_sum - 1.0), std::abs(s.max_sum - 1.0));
      rep.records.push_back(make_record("sum-equals-one", "T-sum-vs-one", -dev, slack, ps));
    } else {
      rep.records.push_back(make_record("sum-vs-one", "T-sum-vs-one", s.margin, 0.0, ps));
    }
  }

  if (p.regime() == Regime::Special) {
    Json pc = base;
    try {
      const ProfilePair pinned = pin_phase(prof);
      const ProfilePair exact =
          ProfilePair::sample(prof.grid, [](double x) { return lambda3_closed_form(0.0, x); });
      const double d = sup_distance(pinned, exact);
      pc["distance"] = d;
      rep.records.push_back(make_record("closed-form", "T-lambda3-closedform", -d, tol.closed_form, pc));
    } catch (const Error& e) {
      rep.records.push_back(failed_record("closed-form", "T-lambda3-closedform", e.what(), pc));
    }

    double identity = 0.0;
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < prof.size(); ++i) identity = std::max(identity, std::abs(prof.u[i] + prof.v[i] - 1.0));
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
      const double du = prof.u[i + 1] - prof.u[i], dv = prof.v[i + 1] - prof.v[i];
      if ((du > 0.0) != (dv < 0.0)) ++mismatches;
    }
    Json pv = base;
    pv["max_abs_u_plus_v_minus_1"] = identity;
    pv["sign_mismatches"] = mismatches;
    rep.records.push_back(make_record("v-equals-1-minus-u", "T-monot3-i", -identity, slack, pv));

    std::vector<double> w1(prof.size()), w2(prof.size());
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const AcPair w = ac_decompose(prof.at(i));
      w1[i] = w.w1;
      w2[i] = w.w2;
    }
    const double r1 = allen_cahn_residual(w1, h), r2 = allen_cahn_residual(w2, h);
    Json pa = base;
    pa["residual_w1"] = r1;
    pa["residual_w2"] = r2;
    rep.records.push_back(make_record("ac-decomposition", "P-ac-decomposition", -std::max(r1, r2), slack, pa));
  }
  return rep;
}

/// The explicit sign-changing pair at L = 3: small discrete residual, u takes
/// both signs with positive forward differences, v < 0 with forward
/// differences of both signs. Margin is the smallest of the sub-slacks.
inline CheckRecord verify_counterexample(double alpha, const Grid1D& g) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be > 0");
  const ProfilePair prof = ProfilePair::sample(g, [&](double x) { return remark_counterexample(alpha, x); });
  const double h = g.h();
  const double residual = max_abs(residual_1d(Params(3.0), prof, prof.boundary()));
  const auto [umin, umax] = std::minmax_element(prof.u.begin(), prof.u.end());
  const double vmax = *std::max_element(prof.v.begin(), prof.v.end());
  const MonotoneReport m = check_discrete_monotone(prof);
  double dv_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) dv_min = std::min(dv_min, prof.v[i + 1] - prof.v[i]);

  const double residual_slack = h * h - residual;
  const double u_sign_slack = std::min(*umax, -*umin);
  const double v_sign_slack = -vmax;
  const double dv_sign_slack = std::min(m.max_dv, -dv_min);
  const double margin = std::min({residual_slack, m.min_du, v_sign_slack, u_sign_slack, dv_sign_slack});
  Json params{{"alpha", alpha},       {"L", g.half_length()}, {"n", g.size()},     {"residual", residual},
              {"residual_bound", h * h}, {"min_u", *umin},      {"max_u", *umax},    {"min_du", m.min_du},
              {"max_v", vmax},        {"min_dv", dv_min},      {"max_dv", m.max_dv}};
  return make_record("counterexample", "R-counterexample", margin, 0.0, std::move(params));
}

// ---------------------------------------------------------------------------
// Canonical battery

struct SuiteStages {
  bool profiles = true;
  bool uniqueness = true;
  bool gibbons = true;
  bool liouville = true;
  bool unit = true;
  bool counterexample = true;

  static SuiteStages none() { return {false, false, false, false, false, false}; }
};

struct SuiteOptions {
  double half_length = 20.0;
  std::size_t n = 2001;
  SolveOptions solve;
  FlowOptions flow;
  VerifyTolerances tol;
  int uniqueness_seeds = 5;
  std::uint64_t seed = 7;
  std::size_t jobs = 1;

  double gibbons_width = 8.0;
  std::size_t gibbons_nt = 64;
  std::size_t gibbons_nn = 801;
  double gibbons_amplitude = 0.1;
  double anisotropy_tol = 1e-8;

  double box_width = 8.0;
  std::size_t box_n = 64;
  double liouville_tol = 1e-6;

  SuiteStages stages;
};

namespace detail {

inline Json flow_params(const FlowOutcome& out) {
  return {{"steps", out.steps}, {"dt", out.dt}, {"final_update", out.final_update}, {"converged", out.converged}};
}

inline CheckRecord energy_record(const std::string& name, std::string_view tag, const FlowOutcome& out) {
  const double inc = max_energy_increase(out.energy_trace);
  Json p = flow_params(out);
  p["max_energy_increase"] = inc;
  p["initial_energy"] = out.energy_trace.front();
  p["final_energy"] = out.energy_trace.back();
  return make_record(name, tag, -inc, energy_roundoff(out.energy_trace), p);
}

inline std::string fmt_number(double l) {
  std::string s = std::to_string(l);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

inline std::string tag_lambda(double l) { return "[lambda=" + fmt_number(l) + "] "; }

}  // namespace detail

/// A relaxation experiment: the flow outcome plus the records judging it.
struct RelaxationRun {
  FlowOutcome flow;
  std::vector<CheckRecord> records;
};

/// Perturbed slab relaxation for lambda > 1: the steady state must be
/// transverse-constant, monotone in x_N and agree with the Newton profile.
/// At lambda = 3 it is also compared with the explicit profile.
inline RelaxationRun gibbons_run(const Params& p, const SuiteOptions& o) {
  detail::require_heteroclinic_regime(p);
  const Grid1D gn(o.half_length, o.gibbons_nn);
  const std::string tag = detail::tag_lambda(p.lambda());
  const Json base{{"lambda", p.lambda()},   {"width", o.gibbons_width}, {"nt", o.gibbons_nt},
                  {"nn", o.gibbons_nn},     {"L", o.half_length},       {"amplitude", o.gibbons_amplitude},
                  {"steady_tol", o.flow.steady_tol}, {"rng_seed", o.flow.rng_seed}};
  const SlabField f0 = gibbons_initial_data(Axis::periodic(o.gibbons_width, o.gibbons_nt), gn,
                                            o.gibbons_amplitude, o.flow.rng_seed);
  RelaxationRun run{relax_attempt(p, f0, o.flow), {}};
  const FlowOutcome& fo = run.flow;
  auto& out = run.records;
  const double slack = o.tol.slack_factor * gn.h() * gn.h();
  out.push_back(detail::energy_record(tag + "gibbons-energy", "T1.1-monotone-symmetry", fo));

  Json pa = base;
  pa.update(detail::flow_params(fo));
  const double aniso = transverse_anisotropy(fo.field);
  pa["anisotropy"] = aniso;
  CheckRecord ra = make_record(tag + "gibbons-anisotropy", "T1.1-monotone-symmetry", -aniso, o.anisotropy_tol, pa);
  if (!fo.converged) invalidate(ra);
  out.push_back(ra);

  for (auto& r : verify_bounds(p, fo.field.u, fo.field.v, slack, tag + "gibbons-", base)) out.push_back(std::move(r));

  const ProfilePair extracted = pin_phase(extract_1d(fo.field, std::max(aniso, o.anisotropy_tol)));
  const MonotoneReport m = check_discrete_monotone(extracted);
  Json pm = base;
  pm["min_du"] = m.min_du;
  pm["max_dv"] = m.max_dv;
  out.push_back(make_record(tag + "gibbons-monotone", "T1.1-monotone-symmetry", std::min(m.min_du, -m.max_dv), 0.0, pm));

  if (p.regime() == Regime::Special) {
    const ProfilePair exact = ProfilePair::sample(gn, [](double x) { return lambda3_closed_form(0.0, x); });
    const double d = sup_distance(extracted, exact);
    Json pc = base;
    pc["distance"] = d;
    pc["scope"] = "evidence-only";
    out.push_back(make_record(tag + "gibbons-closed-form", "T-lambda3-closedform", -d, o.tol.closed_form, pc));
  }

  const SolveOutcome ref = newton_solve(p, Grid1D(o.half_length, o.n), initial_guess(p, Grid1D(o.half_length, o.n)),
                                        o.solve);
  const double d = sup_distance(extracted, resample(pin_phase(ref.profile), gn));
  Json pn = base;
  pn["distance"] = d;
  pn["newton_n"] = o.n;
  out.push_back(make_record(tag + "gibbons-vs-newton", "T1.1-monotone-symmetry", -d, slack, pn));
  return run;
}

/// Fully periodic box from random positive data, lambda in (0,1): the limit
/// must be the constant 1/sqrt(1+lambda) in both components.
inline RelaxationRun liouville_run(const Params& p, const SuiteOptions& o) {
  const double c = liouville_constant(p);
  const Axis box = Axis::periodic(o.box_width, o.box_n);
  const std::string tag = detail::tag_lambda(p.lambda());
  const Json base{{"lambda", p.lambda()}, {"width", o.box_width}, {"n", o.box_n}, {"rng_seed", o.flow.rng_seed}};
  RelaxationRun run{relax_attempt(p, random_periodic_data(box, box, o.flow.rng_seed), o.flow), {}};
  const FlowOutcome& fo = run.flow;
  double dev = 0.0;
  for (std::size_t k = 0; k < fo.field.u.size(); ++k) {
    dev = std::max({dev, std::abs(fo.field.u[k] - c), std::abs(fo.field.v[k] - c)});
  }
  Json pl = base;
  pl.update(detail::flow_params(fo));
  pl["constant"] = c;
  pl["max_deviation"] = dev;
  CheckRecord r = make_record(tag + "liouville", "T-liouville-sub1", -dev, o.liouville_tol, pl);
  if (!fo.converged) invalidate(r);
  run.records.push_back(std::move(r));
  const double slack = o.tol.slack_factor * box.h() * box.h();
  for (auto& b : verify_bounds(p, fo.field.u, fo.field.v, slack, tag + "liouville-", base)) {
    run.records.push_back(std::move(b));
  }
  run.records.push_back(detail::energy_record(tag + "liouville-energy", "T-liouville-sub1", fo));
  return run;
}

/// Periodic 2D box at lambda = 1 from random positive data: the limit must be
/// a constant pair on the unit circle.
inline RelaxationRun unit_coupling_run(const SuiteOptions& o) {
  const Params p(1.0);
  const Axis box = Axis::periodic(o.box_width, o.box_n);
  const Json base{{"lambda", 1.0}, {"width", o.box_width}, {"n", o.box_n}, {"rng_seed", o.flow.rng_seed},
                  {"dimension", 2}};
  RelaxationRun run{relax_attempt(p, random_periodic_data(box, box, o.flow.rng_seed), o.flow), {}};
  const FlowOutcome& fo = run.flow;
  double circle = 0.0;
  const auto [ulo, uhi] = std::minmax_element(fo.field.u.begin(), fo.field.u.end());
  const auto [vlo, vhi] = std::minmax_element(fo.field.v.begin(), fo.field.v.end());
  for (std::size_t k = 0; k < fo.field.u.size(); ++k) {
    circle = std::max(circle, std::abs(fo.field.u[k] * fo.field.u[k] + fo.field.v[k] * fo.field.v[k] - 1.0));
  }
  const double spread = std::max(*uhi - *ulo, *vhi - *vlo);
  Json pl = base;
  pl.update(detail::flow_params(fo));
  pl["max_abs_norm2_minus_1"] = circle;
  pl["spread"] = spread;
  pl["u"] = fo.field.u.front();
  pl["v"] = fo.field.v.front();
  CheckRecord r = make_record("unit-coupling", "T-liouville-eq1", -std::max(circle, spread), o.liouville_tol, pl);
  if (!fo.converged) invalidate(r);
  run.records.push_back(std::move(r));
  const double slack = o.tol.slack_factor * box.h() * box.h();
  for (auto& b : verify_bounds(p, fo.field.u, fo.field.v, slack, "unit-coupling-", base)) {
    run.records.push_back(std::move(b));
  }
  run.records.push_back(detail::energy_record("unit-coupling-energy", "T-liouville-eq1", fo));
  return run;
}

namespace detail {

inline std::vector<CheckRecord> stage_profiles(const SuiteOptions& o) {
  std::vector<CheckRecord> out;
  const Grid1D g(o.half_length, o.n);
  for (double lam : {2.0, 3.0, 6.0}) {
    const Params p(lam);
    const std::string tag = tag_lambda(lam);
    try {
      SolveOutcome s = newton_attempt(p, g, initial_guess(p, g), o.solve);
      if (!s.converged) s = continuation_sweep(3.0, lam, o.solve.continuation_step, g, o.solve).back();
      VerifyReport r = verify_profile(p, s.profile, o.tol);
      for (auto& rec : r.records) {
        rec.name = tag + rec.name;
        rec.params["newton_iterations"] = s.iterations;
        rec.params["newton_residual"] = s.final_residual;
        out.push_back(std::move(rec));
      }
    } catch (const Error& e) {
      out.push_back(failed_record(tag + "solve", "T1.1-monotone-symmetry", e.what(), {{"lambda", lam}}));
    }
  }
  return out;
}

inline std::vector<CheckRecord> stage_uniqueness(const SuiteOptions& o) {
  std::vector<CheckRecord> out;
  const Grid1D g(o.half_length, o.n);
  for (double lam : {2.0, 3.0}) {
    const std::string name = tag_lambda(lam) + "uniqueness";
    Json params{{"lambda", lam}, {"seeds", o.uniqueness_seeds}, {"rng_seed", o.seed}};
    try {
      const ProbeResult pr = uniqueness_probe(Params(lam), g, o.solve, o.uniqueness_seeds, o.seed, 1);
      params["failures"] = pr.failures;
      params["max_distance"] = pr.max_distance;
      CheckRecord r = make_record(name, "C1.2-uniqueness", -pr.max_distance, 1e-6, params);
      if (!pr.all_converged()) invalidate(r);
      out.push_back(std::move(r));
    } catch (const Error& e) {
      out.push_back(failed_record(name, "C1.2-uniqueness", e.what(), params));
    }
  }
  return out;
}

inline std::vector<CheckRecord> stage_gibbons(const SuiteOptions& o) {
  try {
    return gibbons_run(Params(3.0), o).records;
  } catch (const Error& e) {
    return {failed_record(tag_lambda(3.0) + "gibbons", "T1.1-monotone-symmetry", e.what(), {{"lambda", 3.0}})};
  }
}

inline std::vector<CheckRecord> stage_liouville(const SuiteOptions& o) {
  std::vector<CheckRecord> out;
  for (double lam : {0.25, 0.5, 0.75}) {
    try {
      for (auto& r : liouville_run(Params(lam), o).records) out.push_back(std::move(r));
    } catch (const Error& e) {
      out.push_back(failed_record(tag_lambda(lam) + "liouville", "T-liouville-sub1", e.what(), {{"lambda", lam}}));
    }
  }
  return out;
}

inline std::vector<CheckRecord> stage_unit(const SuiteOptions& o) {
  try {
    return unit_coupling_run(o).records;
  } catch (const Error& e) {
    return {failed_record("unit-coupling", "T-liouville-eq1", e.what(), {{"lambda", 1.0}})};
  }
}

inline std::vector<CheckRecord> stage_counterexample(const SuiteOptions& o) {
  std::vector<CheckRecord> out;
  const Grid1D g(o.half_length, o.n);
  for (double alpha : {1.0, 4.0}) {
    CheckRecord r = verify_counterexample(alpha, g);
    r.name = "[alpha=" + fmt_number(alpha) + "] " + r.name;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Runs the enabled stages (possibly concurrently) and assembles the records
/// in fixed stage order.
inline VerifyReport full_suite(const SuiteOptions& o) {
  o.solve.validate();
  o.flow.validate();
  using Stage = std::vector<CheckRecord> (*)(const SuiteOptions&);
  std::vector<Stage> stages;
  if (o.stages.profiles) stages.push_back(&detail::stage_profiles);
  if (o.stages.uniqueness) stages.push_back(&detail::stage_uniqueness);
  if (o.stages.gibbons) stages.push_back(&detail::stage_gibbons);
  if (o.stages.liouville) stages.push_back(&detail::stage_liouville);
  if (o.stages.unit) stages.push_back(&detail::stage_unit);
  if (o.stages.counterexample) stages.push_back(&detail::stage_counterexample);

  std::vector<std::vector<CheckRecord>> results(stages.size());
  parallel_for(stages.size(), o.jobs, [&](std::size_t i) { results[i] = stages[i](o); });

  VerifyReport rep;
  rep.seed = o.seed;
  for (const auto& r : results) rep.append(r);
  return rep;
}

}  // namespace gprig
