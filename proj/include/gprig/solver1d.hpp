#pragma once

// Heteroclinic profiles of the 1D system on [-L, L] with data (0,1) at -L and
// (1,0) at +L: damped Newton on the 3-point discretization, natural-parameter
// continuation in the coupling, and translation normalization.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gprig/banded.hpp"
#include "gprig/error.hpp"
#include "gprig/grid.hpp"
#include "gprig/model.hpp"
#include "gprig/parallel.hpp"

namespace gprig {

struct SolveOptions {
  double newton_tol = 1e-9;        // max-norm of residual_1d at convergence
  int max_iters = 50;
  double damping_min = 1.0 / 64.0;  // smallest backtracking factor
  double continuation_step = 0.5;
  /// Replace the u-equation at the centre node by u = v there. Removes the
  /// near-null translation mode of the Jacobian (its eigenvalue decays like
  /// exp(-2 kappa L)); the block-tridiagonal structure is unchanged.
  bool phase_pinning = true;

  void validate() const {
    if (!(newton_tol > 0.0) || !std::isfinite(newton_tol)) {
      throw Error(ErrorKind::InvalidArgument, "newton_tol must be > 0");
    }
    if (max_iters < 1) throw Error(ErrorKind::InvalidArgument, "max_iters must be >= 1");
    if (!(damping_min > 0.0 && damping_min <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "damping_min must lie in (0, 1]");
    }
    if (!(continuation_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "continuation_step must be > 0");
  }
};

struct SolveOutcome {
  double lambda = 0.0;
  ProfilePair profile;
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;  // merit norm before each iteration, then final
  std::vector<double> step_history;      // accepted damping factor per iteration
};

/// The L = 3 explicit profile with alpha = 0, used as the seed for every coupling.
inline ProfilePair initial_guess(const Params&, const Grid1D& g) {
  ProfilePair p = ProfilePair::sample(g, [](double x) { return lambda3_closed_form(0.0, x); });
  // Pin the end rows to the exact equilibria; tanh(20/sqrt2) is 1 only to ~1e-12.
  p.set(0, {0.0, 1.0});
  p.set(g.size() - 1, {1.0, 0.0});
  return p;
}

namespace detail {

inline void require_heteroclinic_regime(const Params& p) {
  if (!p.segregated()) {
    throw Error(ErrorKind::Regime,
                "no heteroclinic for lambda = " + std::to_string(p.lambda()) +
                    ": for lambda <= 1 positive solutions are constant (u = v = 1/sqrt(1+lambda) when "
                    "lambda < 1, u^2 + v^2 = 1 when lambda = 1)");
  }
}

/// Residual of the system actually solved: residual_1d, with the phase row
/// swapped in at the centre when pinning.
inline ProfilePair newton_residual(const Params& p, const ProfilePair& prof, bool pin) {
  ProfilePair r = residual_1d(p, prof);
  if (pin) {
    const std::size_t c = prof.grid.center();
    r.u[c] = prof.u[c] - prof.v[c];
  }
  return r;
}

}  // namespace detail

/// Damped Newton iteration. Never throws on non-convergence; inspect
/// `converged`. Throws SingularJacobian when a pivot block degenerates.
inline SolveOutcome newton_attempt(const Params& p, const Grid1D& g, const ProfilePair& guess,
                                   const SolveOptions& opts) {
  opts.validate();
  detail::require_heteroclinic_regime(p);
  if (!(guess.grid == g)) throw Error(ErrorKind::InvalidArgument, "guess lives on a different grid");
  guess.validate();

  const std::size_t n = g.size();
  const std::size_t c = g.center();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const Dirichlet bc = Dirichlet::heteroclinic();

  SolveOutcome out{p.lambda(), guess, 0, 0.0, false, {}, {}};
  ProfilePair& prof = out.profile;
  prof.set(0, bc.left);
  prof.set(n - 1, bc.right);

  ProfilePair r = detail::newton_residual(p, prof, opts.phase_pinning);
  double merit = max_abs(r);

  std::vector<Mat2> lower(n), diag(n), upper(n);
  std::vector<StatePair> rhs(n);
  const Mat2 coupling{inv_h2, 0.0, 0.0, inv_h2};

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    out.residual_history.push_back(merit);
    const double full = max_abs(residual_1d(p, prof));
    if (full <= opts.newton_tol) {
      out.iterations = iter;
      out.final_residual = full;
      out.converged = true;
      out.residual_history.back() = merit;
      return out;
    }

    lower[0] = upper[0] = lower[n - 1] = upper[n - 1] = Mat2{};
    diag[0] = diag[n - 1] = Mat2{1.0, 0.0, 0.0, 1.0};
    for (std::size_t i = 1; i + 1 < n; ++i) {
      Mat2 jac = reaction_jacobian(p, prof.at(i));
      jac.a11 -= 2.0 * inv_h2;
      jac.a22 -= 2.0 * inv_h2;
      lower[i] = coupling;
      diag[i] = jac;
      upper[i] = coupling;
    }
    if (opts.phase_pinning) {
      lower[c].a11 = lower[c].a12 = 0.0;
      upper[c].a11 = upper[c].a12 = 0.0;
      diag[c].a11 = 1.0;
      diag[c].a12 = -1.0;
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] = {-r.u[i], -r.v[i]};

    std::vector<StatePair> delta;
    try {
      delta = solve_block_tridiagonal(lower, diag, upper, rhs);
    } catch (const Error& e) {
      throw Error(ErrorKind::SingularJacobian, std::string(e.what()) + " (lambda = " +
                                                   std::to_string(p.lambda()) + ", iterate " +
                                                   std::to_string(iter) + ")");
    }

    double step = 1.0;
    ProfilePair trial = prof;
    ProfilePair trial_r = r;
    double trial_merit = 0.0;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) {
        trial.u[i] = prof.u[i] + step * delta[i].u;
        trial.v[i] = prof.v[i] + step * delta[i].v;
      }
      trial_r = detail::newton_residual(p, trial, opts.phase_pinning);
      trial_merit = max_abs(trial_r);
      if ((std::isfinite(trial_merit) && trial_merit < merit) || step * 0.5 < opts.damping_min) break;
      step *= 0.5;
    }
    if (!std::isfinite(trial_merit)) break;
    prof = std::move(trial);
    r = std::move(trial_r);
    merit = trial_merit;
    out.step_history.push_back(step);
    out.iterations = iter + 1;
  }

  out.final_residual = max_abs(residual_1d(p, prof));
  out.residual_history.push_back(merit);
  out.converged = out.final_residual <= opts.newton_tol;
  return out;
}

/// As newton_attempt, but throws NonConvergence when the tolerance is not met.
inline SolveOutcome newton_solve(const Params& p, const Grid1D& g, const ProfilePair& guess,
                                 const SolveOptions& opts) {
  SolveOutcome out = newton_attempt(p, g, guess, opts);
  if (!out.converged) {
    throw Error(ErrorKind::NonConvergence,
                "Newton did not converge for lambda = " + std::to_string(p.lambda()) + " after " +
                    std::to_string(out.iterations) + " iterations, residual " +
                    std::to_string(out.final_residual));
  }
  return out;
}

inline SolveOutcome newton_solve(const Params& p, const Grid1D& g, const SolveOptions& opts = {}) {
  return newton_solve(p, g, initial_guess(p, g), opts);
}

/// Location x* where u - v vanishes, by linear interpolation between the two
/// nodes that bracket the unique sign change.
inline double phase_crossing(const ProfilePair& prof) {
  std::size_t changes = 0;
  std::size_t last_nonzero = prof.size();
  double where = 0.0;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const double d = prof.u[i] - prof.v[i];
    if (d == 0.0) continue;
    if (last_nonzero != prof.size()) {
      const double dp = prof.u[last_nonzero] - prof.v[last_nonzero];
      if ((dp < 0.0) != (d < 0.0)) {
        ++changes;
        const double xa = prof.grid.x(last_nonzero), xb = prof.grid.x(i);
        if (i == last_nonzero + 1) {
          where = xa + (xb - xa) * dp / (dp - d);
        } else {
          where = prof.grid.x(last_nonzero + 1);  // exact zeros in between
          if (i - last_nonzero > 2) where = 0.5 * (prof.grid.x(last_nonzero + 1) + prof.grid.x(i - 1));
        }
      }
    }
    last_nonzero = i;
  }
  if (changes != 1) {
    throw Error(ErrorKind::NoCrossing,
                "u - v must change sign exactly once, found " + std::to_string(changes) + " sign changes");
  }
  return where;
}

/// Translates the profile so that u = v at x = 0 (linear resampling). The end
/// rows keep their original values.
inline ProfilePair pin_phase(const ProfilePair& prof) {
  const double shift = phase_crossing(prof);
  ProfilePair out = ProfilePair::sample(prof.grid, [&](double x) { return interpolate(prof, x + shift); });
  out.set(0, prof.at(0));
  out.set(prof.size() - 1, prof.at(prof.size() - 1));
  return out;
}

struct SweepResult {
  std::vector<SolveOutcome> outcomes;  // one per nominal sample reached
  bool stalled = false;
  std::string message;
  double last_good = 0.0;  // last converged coupling (nominal or intermediate)
  bool have_good = false;
};

/// Natural-parameter continuation from lambda_from to lambda_to (either
/// direction) in steps of `step`. Each converged profile seeds the next
/// sample; a failed sample is approached with up to four step halvings.
/// Stops at the first stall; never throws on non-convergence.
inline SweepResult continuation_attempt(double lambda_from, double lambda_to, double step, const Grid1D& g,
                                        const SolveOptions& opts) {
  opts.validate();
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidArgument, "step must be > 0");
  detail::require_heteroclinic_regime(Params(lambda_from));
  detail::require_heteroclinic_regime(Params(lambda_to));

  const double span = lambda_to - lambda_from;
  const auto count = static_cast<std::size_t>(std::ceil(std::abs(span) / step - 1e-9));
  std::vector<double> samples;
  for (std::size_t k = 0; k < count; ++k) {
    samples.push_back(lambda_from + std::copysign(step * static_cast<double>(k), span));
  }
  samples.push_back(lambda_to);

  SweepResult res;
  ProfilePair seed = initial_guess(Params(lambda_from), g);
  for (double target : samples) {
    double local_step = res.have_good ? std::abs(target - res.last_good) : 0.0;
    int halvings = 0;
    for (;;) {
      const double remaining = target - res.last_good;
      const double lam = (!res.have_good || local_step >= std::abs(remaining) - 1e-12)
                             ? target
                             : res.last_good + std::copysign(local_step, remaining);
      SolveOutcome out = newton_attempt(Params(lam), g, seed, opts);
      if (out.converged) {
        seed = out.profile;
        res.last_good = lam;
        res.have_good = true;
        if (lam == target) {
          res.outcomes.push_back(std::move(out));
          break;
        }
        continue;
      }
      if (++halvings > 4 || !res.have_good) {
        res.stalled = true;
        res.message = "continuation stalled approaching lambda = " + std::to_string(target) +
                      (res.have_good ? "; last converged lambda = " + std::to_string(res.last_good)
                                     : std::string("; no converged sample"));
        return res;
      }
      local_step *= 0.5;
    }
  }
  return res;
}

/// As continuation_attempt; throws ContinuationStall instead of stopping.
inline std::vector<SolveOutcome> continuation_sweep(double lambda_from, double lambda_to, double step,
                                                    const Grid1D& g, const SolveOptions& opts) {
  SweepResult res = continuation_attempt(lambda_from, lambda_to, step, g, opts);
  if (res.stalled) throw Error(ErrorKind::ContinuationStall, res.message);
  return std::move(res.outcomes);
}

struct ProbeResult {
  double max_distance = 0.0;             // max pairwise sup-distance of pinned profiles
  std::vector<SolveOutcome> outcomes;    // one per seed, in seed order
  std::vector<std::string> failures;     // empty string for a converged seed
  bool all_converged() const {
    return std::all_of(failures.begin(), failures.end(), [](const std::string& s) { return s.empty(); });
  }
};

/// Seeded random perturbation of magnitude <= `amplitude` on interior nodes,
/// clipped to [0, 1].
inline ProfilePair perturbed_guess(const Params& p, const Grid1D& g, std::uint64_t seed,
                                   double amplitude = 0.2) {
  ProfilePair guess = initial_guess(p, g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    guess.u[i] = std::clamp(guess.u[i] + noise(rng), 0.0, 1.0);
    guess.v[i] = std::clamp(guess.v[i] + noise(rng), 0.0, 1.0);
  }
  return guess;
}

/// Solves from `n_seeds` perturbed guesses and measures how far apart the
/// phase-pinned results are.
inline ProbeResult uniqueness_probe(const Params& p, const Grid1D& g, const SolveOptions& opts, int n_seeds,
                                    std::uint64_t rng_seed, std::size_t jobs = 1) {
  detail::require_heteroclinic_regime(p);
  if (n_seeds < 1) throw Error(ErrorKind::InvalidArgument, "n_seeds must be >= 1");
  const auto count = static_cast<std::size_t>(n_seeds);
  ProbeResult result;
  result.outcomes.assign(count, SolveOutcome{p.lambda(), ProfilePair(g), 0, 0.0, false, {}, {}});
  result.failures.assign(count, std::string());
  std::vector<ProfilePair> pinned(count, ProfilePair(g));
  parallel_for(count, jobs, [&](std::size_t k) {
    try {
      const ProfilePair guess = perturbed_guess(p, g, rng_seed + k);
      result.outcomes[k] = newton_attempt(p, g, guess, opts);
      if (!result.outcomes[k].converged) {
        result.failures[k] = "seed " + std::to_string(k) + ": NonConvergence, residual " +
                             std::to_string(result.outcomes[k].final_residual);
      } else {
        pinned[k] = pin_phase(result.outcomes[k].profile);
      }
    } catch (const Error& e) {
      result.failures[k] = "seed " + std::to_string(k) + ": " + e.what();
    }
  });
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      if (result.failures[a].empty() && result.failures[b].empty()) {
        result.max_distance = std::max(result.max_distance, sup_distance(pinned[a], pinned[b]));
      }
    }
  }
  return result;
}

}  // namespace gprig
