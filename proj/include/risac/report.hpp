#pragma once

#include <string>
#include <vector>

#include "risac/beamforming.hpp"
#include "risac/channel.hpp"
#include "risac/scenario.hpp"

namespace risac {

/// Outcome of one solver run on one channel realization.
struct SolveReport {
  std::string algorithm;  // "sre", "benchmark" or "no-ris"
  CVec w;                 // final transmit beamformer
  CVec v;                 // final surface phases (empty for no-ris)
  Metrics metrics;        // at the final (w, v)

  /// Per-iteration objective: surface objective for sre (higher is
  /// better, see sre.hpp), sensing SNR after each accepted element update
  /// for benchmark, single entry for no-ris.
  std::vector<double> objective_trace;
  std::vector<double> snr_c_trace;  // benchmark only: comms SNR alongside
  std::vector<double> step_trace;   // sre only: accepted step sizes

  int iterations = 0;        // sre: accepted steps; benchmark: element updates
  int outer_iterations = 0;  // benchmark only
  int w_updates = 0;
  bool converged = false;
  double wall_ms = 0.0;  // filled by the harness, not the solver
};

/// Direct-path baseline: ignore the surface entirely and beamform on the
/// line-of-sight channels.
inline SolveReport solve_no_ris(const ChannelSet& ch, const Scenario& sc) {
  SolveReport rep;
  rep.algorithm = "no-ris";
  const CVec h_t = scale(ch.a_t, ch.alpha_t);
  const CVec h_r = scale(ch.a_r, ch.alpha_r);
  const CVec& h_c = ch.h_bu;
  const Beamformer bf =
      optimal_beamformer(h_t, h_c, sc.tx_power_w, sc.gamma0, sc.noise_c_w);
  rep.w = bf.w;
  rep.metrics =
      compute_metrics(h_t, h_r, h_c, rep.w, sc.noise_s_w, sc.noise_c_w);
  rep.objective_trace = {rep.metrics.snr_s};
  rep.iterations = 1;
  rep.w_updates = 1;
  rep.converged = true;
  return rep;
}

}  // namespace risac
