#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "risac/channel.hpp"
#include "risac/report.hpp"

namespace risac {

/// Tuning knobs for the rotate-and-expand surface optimizer.  tol is
/// relative: the objective test compares |f_k - f_{k+1}| against
/// tol * max(|f|, tiny), and the stationarity test compares the tangent
/// residual against sqrt(tol) * ||grad||.
struct SreParams {
  int max_iters = 500;
  double tol = 1e-8;
  double bt_alpha = 0.3;   // Armijo sufficient-decrease fraction
  double bt_beta = 0.5;    // backtracking shrink factor
  double init_step = 1.0;  // scaled by 1/||grad(v0)||_inf before use
  int max_backtracks = 60;
};

struct SreTrace {
  std::vector<double> objective;   // f at v0, then after each accepted step
  std::vector<double> step_sizes;  // accepted step per iteration
  int iterations = 0;              // accepted steps
  bool converged = false;
  double final_residual = 0.0;     // tangent residual at exit
  double final_grad_norm = 0.0;
};

/// Surface objective, minimized:  f(v) = -||h_r(v)||^2 |h_t(v)^H h_c(v)|^2.
/// Driving f down simultaneously strengthens the echo path and aligns the
/// sensing and comms channels.  Defined for any reflection vector, not
/// just unit-modulus ones, so perturbation arguments stay meaningful.
inline double sre_objective(const ChannelSet& ch, const CVec& v) {
  const ChannelSums s = channel_sums(ch, v);
  const double f0 = -std::norm(ch.alpha_r) * norm2(s.s_r);
  const cplx q = std::conj(ch.alpha_t) * hermitian_inner(s.s_t, s.s_c);
  return f0 * std::norm(q);
}

inline double sre_objective(const ChannelSet& ch, const PhaseConfig& v) {
  return sre_objective(ch, v.v());
}

namespace detail {
struct SreEval {
  double f = 0.0;
  CVec g;  // Wirtinger row gradient, length m_ris
};

/// f and its Wirtinger gradient in one pass over the channel sums.
/// First-order contract: f(v + eps d) = f(v) + 2 eps Re{sum_m g_m d_m}
/// + O(eps^2)  (bilinear pairing, no conjugation on d).
inline SreEval sre_eval(const ChannelSet& ch, const CVec& v) {
  const ChannelSums s = channel_sums(ch, v);
  SreEval e;
  const double ar2 = std::norm(ch.alpha_r);
  const double f0 = -ar2 * norm2(s.s_r);
  const cplx q = std::conj(ch.alpha_t) * hermitian_inner(s.s_t, s.s_c);
  e.f = f0 * std::norm(q);

  const CVec rt = adjoint_matvec(ch.u_r, s.s_r);  // (s_r^H U_r)^H
  const CVec tc = adjoint_matvec(ch.u_c, s.s_t);  // (s_t^H U_c)^H
  const CVec ct = adjoint_matvec(ch.u_t, s.s_c);  // (s_c^H U_t)^H

  const double w0 = -std::norm(q) * ar2;
  const cplx w1 = f0 * std::conj(q) * std::conj(ch.alpha_t);
  const cplx w2 = f0 * q * ch.alpha_t;
  const std::size_t m = rt.size();
  e.g.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    e.g[i] = w0 * std::conj(rt[i]) + w1 * std::conj(tc[i]) +
             w2 * std::conj(ct[i]);
  return e;
}

/// Tangent component of the descent direction conj(g) at v on the torus:
/// t_m = conj(g_m) - Re{v_m g_m} v_m.
inline CVec tangent_residual(const CVec& g, const PhaseConfig& v) {
  CVec t(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double c = (v[m] * g[m]).real();
    t[m] = std::conj(g[m]) - c * v[m];
  }
  return t;
}
}  // namespace detail

/// Wirtinger row gradient of sre_objective at v.
inline CVec sre_gradient(const ChannelSet& ch, const CVec& v) {
  return detail::sre_eval(ch, v).g;
}

inline CVec sre_gradient(const ChannelSet& ch, const PhaseConfig& v) {
  return detail::sre_eval(ch, v.v()).g;
}

/// Norm of the Riemannian (tangent) residual; zero exactly at the
/// stationary points of f restricted to the torus.
inline double sre_riemann_residual(const CVec& g, const PhaseConfig& v) {
  return norm(detail::tangent_residual(g, v));
}

/// Projected gradient descent on the unit torus with Armijo backtracking.
/// Starts from uniformly random phases drawn from rng, steps along
/// -conj(grad), re-projects every entry onto the unit circle, and stops
/// once both the relative objective change and the tangent residual are
/// below tolerance.  The objective trace is non-increasing by
/// construction.
inline std::pair<PhaseConfig, SreTrace> run_sre(const ChannelSet& ch,
                                                const SreParams& p,
                                                SeededRng& rng) {
  const std::size_t m = static_cast<std::size_t>(ch.m_ris);
  PhaseConfig v = PhaseConfig::random(m, rng);
  SreTrace trace;

  detail::SreEval e = detail::sre_eval(ch, v.v());
  trace.objective.push_back(e.f);

  double gnorm = norm(e.g);
  if (gnorm == 0.0) {
    // Flat objective (e.g. the surface is out of every loop); v0 is as
    // good as any point.
    trace.converged = true;
    return {v, trace};
  }

  const double tiny = 1e-300;
  double a = p.init_step / std::max(norm_inf(e.g), tiny);

  CVec t = detail::tangent_residual(e.g, v);
  double tnorm2 = norm2(t);

  for (int k = 0; k < p.max_iters; ++k) {
    // Backtrack until the projected step gives sufficient decrease.
    double tried = a;
    PhaseConfig cand;
    double f_cand = 0.0;
    bool accepted = false;
    for (int b = 0; b <= p.max_backtracks; ++b) {
      CVec raw(m);
      for (std::size_t i = 0; i < m; ++i)
        raw[i] = v[i] - tried * std::conj(e.g[i]);
      cand = PhaseConfig::project(raw);
      f_cand = sre_objective(ch, cand);
      if (f_cand <= e.f - p.bt_alpha * 2.0 * tried * tnorm2) {
        accepted = true;
        break;
      }
      tried *= p.bt_beta;
    }
    if (!accepted) break;  // numerically stationary; certificate decides

    const double f_prev = e.f;
    v = cand;
    e = detail::sre_eval(ch, v.v());
    trace.objective.push_back(e.f);
    trace.step_sizes.push_back(tried);
    ++trace.iterations;

    gnorm = norm(e.g);
    if (gnorm == 0.0) {
      trace.converged = true;
      t = detail::tangent_residual(e.g, v);
      tnorm2 = norm2(t);
      break;
    }
    t = detail::tangent_residual(e.g, v);
    tnorm2 = norm2(t);

    const double df = std::abs(f_prev - e.f);
    const bool small_change = df <= p.tol * std::max(std::abs(e.f), tiny);
    const bool stationary =
        std::sqrt(tnorm2) <= std::sqrt(p.tol) * std::max(gnorm, tiny);
    if (small_change && stationary) {
      trace.converged = true;
      break;
    }
    a = tried / p.bt_beta;  // allow the step to grow back
  }

  trace.final_grad_norm = gnorm;
  trace.final_residual = std::sqrt(tnorm2);
  if (!trace.converged && gnorm > 0.0)
    trace.converged =
        trace.final_residual <= std::sqrt(p.tol) * gnorm;
  return {v, trace};
}

/// Optimize the surface on fixed channels, then close with the one-shot
/// beamformer and score the result.  Throws Infeasible if even the
/// optimized surface cannot meet the comms floor.
inline SolveReport sre_solve(const ChannelSet& ch, const Scenario& sc,
                             const SreParams& p, SeededRng& rng) {
  auto [v, trace] = run_sre(ch, p, rng);
  SolveReport rep;
  rep.algorithm = "sre";
  rep.v = v.v();
  const AssembledChannels h = assemble_h(ch, v);
  const Beamformer bf =
      optimal_beamformer(h.h_t, h.h_c, sc.tx_power_w, sc.gamma0, sc.noise_c_w);
  rep.w = bf.w;
  rep.metrics =
      compute_metrics(h.h_t, h.h_r, h.h_c, rep.w, sc.noise_s_w, sc.noise_c_w);
  rep.objective_trace.reserve(trace.objective.size());
  for (double f : trace.objective) rep.objective_trace.push_back(-f);
  rep.step_trace = trace.step_sizes;
  rep.iterations = trace.iterations;
  rep.w_updates = 1;
  rep.converged = trace.converged;
  return rep;
}

/// Convenience wrapper: channels from the scenario seed (substream 0),
/// optimizer start from substream 1.
inline SolveReport sre_solve_full(const Scenario& sc,
                                  const SreParams& p = SreParams{}) {
  SeededRng root(sc.seed);
  SeededRng rng_ch = root.child(0);
  SeededRng rng_init = root.child(1);
  const ChannelSet ch = build_channels(sc, rng_ch);
  return sre_solve(ch, sc, p, rng_init);
}

}  // namespace risac
