#pragma once

// Command-line front end. `run_cli` is the whole program; tools/gprig.cpp only
// forwards argv. Exit codes: 0 pass, 2 failed check or stalled sweep, 1 usage
// or solver error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gprig/config.hpp"
#include "gprig/io.hpp"
#include "gprig/solver1d.hpp"
#include "gprig/solvernd.hpp"
#include "gprig/verify.hpp"

namespace gprig::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

inline std::string default_out_dir() {
  if (const char* env = std::getenv("GP_RIGIDITY_OUT"); env != nullptr && *env != '\0') return env;
  return "gprig-out";
}

namespace detail {

namespace fs = std::filesystem;

/// Flag values are kept as text and routed through the same field setters as
/// the config file, so both report errors by field name.
struct FlagSet {
  std::string config_path;
  std::map<std::string, std::string> values;

  void bind(CLI::App* app, const std::string& flag, const std::string& field, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, field](const std::string& s) { values[field] = s; }, help + " [" + field + "]");
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_path.empty()) load_config_file(c, config_path);
    for (const auto& [field, text] : values) set_config_value(c, field, text);
    if (c.out.empty()) c.out = default_out_dir();
    c.validate();
    return c;
  }
};

inline void add_common(CLI::App* app, FlagSet& f) {
  app->add_option("--config", f.config_path, "INI file; flags override its values")->check(CLI::ExistingFile);
  f.bind(app, "--lambda", "model.lambda", "coupling constant");
  f.bind(app, "--L", "grid.L", "half length of the normal interval");
  f.bind(app, "--n", "grid.n", "nodes along the normal direction");
  f.bind(app, "--tol", "solve.tol", "Newton residual tolerance");
  f.bind(app, "--max-iters", "solve.max_iters", "Newton iteration cap");
  f.bind(app, "--seed", "run.seed", "random seed");
  f.bind(app, "--out", "run.out", "output directory");
  f.bind(app, "--jobs", "run.jobs", "worker cap");
  app->add_option_function<std::vector<std::string>>(
      "--set",
      [&f](const std::vector<std::string>& kvs) {
        for (const auto& kv : kvs) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected section.key=value");
          f.values[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
      },
      "override any config field as section.key=value");
}

inline void prepare_out(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + c.out + "': " + ec.message());
  write_file((fs::path(c.out) / "run_config.ini").string(), [&](std::ostream& os) { os << to_ini(c); });
}

inline std::string out_path(const RunConfig& c, const std::string& name) { return (fs::path(c.out) / name).string(); }

inline void write_report(const RunConfig& c, const std::string& name, const VerifyReport& r) {
  write_file(out_path(c, name), [&](std::ostream& os) { os << serialize(r) << '\n'; });
}

inline void print_failures(const VerifyReport& r, std::ostream& err) {
  for (const auto& rec : r.records) {
    if (!rec.pass) {
      err << "FAILED " << rec.name << " (" << rec.theorem << "): margin " << format_double(rec.margin)
          << ", tolerance " << format_double(rec.tolerance) << '\n';
    }
  }
}

inline int verdict(const VerifyReport& r, std::ostream& out, std::ostream& err) {
  out << r.summary() << '\n';
  print_failures(r, err);
  return r.overall_pass() ? kExitPass : kExitCheckFailed;
}

/// Newton from the explicit seed, then continuation from lambda = 3 when the
/// direct attempt does not converge.
inline SolveOutcome solve_profile(const RunConfig& c, const Grid1D& g) {
  const Params p(c.lambda);
  SolveOutcome s = newton_attempt(p, g, initial_guess(p, g), c.solve);
  if (s.converged) return s;
  SweepResult sw = continuation_attempt(3.0, c.lambda, c.solve.continuation_step, g, c.solve);
  if (!sw.stalled && !sw.outcomes.empty()) return std::move(sw.outcomes.back());
  throw Error(ErrorKind::NonConvergence, "Newton did not converge at lambda = " + format_double(c.lambda) +
                                             " (residual " + format_double(s.final_residual) + " after " +
                                             std::to_string(s.iterations) + " iterations); " + sw.message);
}

inline void refuse_unless_segregated(double lambda) {
  if (!(lambda > 1.0)) {
    throw Error(ErrorKind::Regime, "refusing to solve: for lambda <= 1 every bounded positive solution is constant "
                                   "(Liouville rigidity), so no heteroclinic profile exists at lambda = " +
                                       format_double(lambda));
  }
}

inline int cmd_solve1d(const RunConfig& c, std::ostream& out, std::ostream& err) {
  refuse_unless_segregated(c.lambda);
  const Grid1D g(c.half_length, c.n);
  const SolveOutcome s = solve_profile(c, g);
  VerifyReport rep = verify_profile(Params(c.lambda), s.profile);
  rep.seed = c.seed;
  for (auto& r : rep.records) {
    r.params["newton_iterations"] = s.iterations;
    r.params["newton_residual"] = s.final_residual;
  }
  prepare_out(c);
  write_file(out_path(c, "profile.csv"), [&](std::ostream& os) { write_profile_csv(os, s.profile); });
  write_report(c, "report.json", rep);
  out << "lambda " << format_double(c.lambda) << ": converged in " << s.iterations << " iterations, residual "
      << format_double(s.final_residual) << '\n';
  return verdict(rep, out, err);
}

struct SumRange {
  double lo, hi;
};

inline SumRange interior_sum_range(const ProfilePair& p) {
  SumRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    r.lo = std::min(r.lo, p.u[i] + p.v[i]);
    r.hi = std::max(r.hi, p.u[i] + p.v[i]);
  }
  return r;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  refuse_unless_segregated(c.sweep_from);
  refuse_unless_segregated(c.sweep_to);
  const Grid1D g(c.half_length, c.n);
  const SweepResult sw = continuation_attempt(c.sweep_from, c.sweep_to, c.sweep_step, g, c.solve);
  prepare_out(c);

  VerifyReport rep;
  rep.seed = c.seed;
  std::ostringstream summary;
  summary << "lambda,min_sum,max_sum,energy,iters\n";
  for (const SolveOutcome& s : sw.outcomes) {
    const std::string label = gprig::detail::fmt_number(s.lambda);
    write_file(out_path(c, "profile_lambda_" + label + ".csv"),
               [&](std::ostream& os) { write_profile_csv(os, s.profile); });
    const SumRange sr = interior_sum_range(s.profile);
    summary << format_double(s.lambda) << ',' << format_double(sr.lo) << ',' << format_double(sr.hi) << ','
            << format_double(discrete_energy_1d(Params(s.lambda), s.profile)) << ',' << s.iterations << '\n';
    VerifyReport one = verify_profile(Params(s.lambda), s.profile);
    for (auto& r : one.records) r.name = gprig::detail::tag_lambda(s.lambda) + r.name;
    rep.append(one.records);
    out << "lambda " << label << ": " << s.iterations << " iterations, interior u+v in [" << format_double(sr.lo)
        << ", " << format_double(sr.hi) << "]\n";
  }
  write_file(out_path(c, "summary.csv"), [&](std::ostream& os) { os << summary.str(); });
  write_report(c, "report.json", rep);
  if (sw.stalled) {
    err << sw.message << '\n';
    err << "last good lambda: " << (sw.have_good ? format_double(sw.last_good) : std::string("none")) << '\n';
    return kExitCheckFailed;
  }
  return verdict(rep, out, err);
}

inline int cmd_relax(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.transverse_dims != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "invalid config field 'grid.transverse_dims': relaxation supports exactly 1 transverse dimension "
                "(got " + std::to_string(c.transverse_dims) + ")");
  }
  const SuiteOptions o = c.suite();
  const RelaxationRun run = [&] {
    if (c.mode == "gibbons") {
      refuse_unless_segregated(c.lambda);
      return gibbons_run(Params(c.lambda), o);
    }
    if (c.mode == "liouville") {
      if (!(c.lambda < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "invalid config field 'model.lambda': liouville mode needs lambda < 1");
      }
      return liouville_run(Params(c.lambda), o);
    }
    if (c.lambda != 1.0) {
      throw Error(ErrorKind::InvalidArgument, "invalid config field 'model.lambda': lambda1 mode needs lambda = 1");
    }
    return unit_coupling_run(o);
  }();
  prepare_out(c);
  VerifyReport rep;
  rep.seed = c.seed;
  rep.records = run.records;
  write_file(out_path(c, "field.csv"), [&](std::ostream& os) { write_slab_csv(os, run.flow.field); });
  write_file(out_path(c, "energy_trace.csv"), [&](std::ostream& os) { write_energy_trace_csv(os, run.flow); });
  write_report(c, "report.json", rep);

  const auto& f = run.flow.field;
  out << c.mode << ": " << (run.flow.converged ? "converged" : "not converged") << " after " << run.flow.steps
      << " steps (dt " << format_double(run.flow.dt) << ")\n";
  if (c.mode != "gibbons") {
    const auto [ulo, uhi] = std::minmax_element(f.u.begin(), f.u.end());
    const auto [vlo, vhi] = std::minmax_element(f.v.begin(), f.v.end());
    out << "u in [" << format_double(*ulo) << ", " << format_double(*uhi) << "], v in [" << format_double(*vlo)
        << ", " << format_double(*vhi) << "]\n";
  } else {
    out << "transverse anisotropy " << format_double(transverse_anisotropy(f)) << '\n';
  }
  return verdict(rep, out, err);
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const VerifyReport rep = full_suite(c.suite());
  prepare_out(c);
  write_report(c, "suite_report.json", rep);
  for (const auto& r : rep.records) out << (r.pass ? "pass " : "FAIL ") << r.name << '\n';
  return verdict(rep, out, err);
}

inline void list_checks(std::ostream& out) {
  for (auto tag : kTheoremTags) out << tag << '\n';
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Heteroclinic solver and rigidity checks for the competing two-component system"};
  app.name("gprig");
  app.require_subcommand(1);

  detail::FlagSet solve_flags, sweep_flags, relax_flags, verify_flags;

  CLI::App* solve = app.add_subcommand("solve1d", "Newton solve of one heteroclinic profile");
  detail::add_common(solve, solve_flags);

  CLI::App* sweep = app.add_subcommand("sweep", "continuation in lambda with one profile per sample");
  detail::add_common(sweep, sweep_flags);
  sweep_flags.bind(sweep, "--from", "sweep.from", "first lambda");
  sweep_flags.bind(sweep, "--to", "sweep.to", "last lambda");
  sweep_flags.bind(sweep, "--step", "sweep.step", "nominal lambda step");

  CLI::App* relax = app.add_subcommand("relax", "gradient-flow relaxation (gibbons, liouville or lambda1)");
  detail::add_common(relax, relax_flags);
  relax_flags.bind(relax, "--mode", "relax.mode", "gibbons | liouville | lambda1");
  relax_flags.bind(relax, "--dt", "flow.dt", "time step, 0 for the stability bound");
  relax_flags.bind(relax, "--steady-tol", "flow.steady_tol", "steady-state tolerance");
  relax_flags.bind(relax, "--max-steps", "flow.max_steps", "step cap");
  relax_flags.bind(relax, "--transverse-dims", "grid.transverse_dims", "transverse dimensions (only 1)");

  CLI::App* verify = app.add_subcommand("verify", "run the full check battery");
  detail::add_common(verify, verify_flags);
  verify_flags.bind(verify, "--steady-tol", "flow.steady_tol", "steady-state tolerance of every relaxation");
  verify_flags.bind(verify, "--stages", "verify.stages", "all, or comma list of stages");
  bool list = false;
  verify->add_flag("--list-checks", list, "print the theorem tags and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (verify->parsed() && list) {
      detail::list_checks(out);
      return kExitPass;
    }
    if (solve->parsed()) return detail::cmd_solve1d(solve_flags.resolve(), out, err);
    if (sweep->parsed()) return detail::cmd_sweep(sweep_flags.resolve(), out, err);
    if (relax->parsed()) return detail::cmd_relax(relax_flags.resolve(), out, err);
    return detail::cmd_verify(verify_flags.resolve(), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace gprig::cli
