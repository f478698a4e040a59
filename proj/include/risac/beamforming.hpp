#pragma once

#include <cmath>
#include <string>

#include "risac/linalg.hpp"

namespace risac {

/// Echo SNR at the sensing receiver: ||h_r||^2 |h_t^H w|^2 / sigma_s2.
inline double sensing_snr(const CVec& h_t, const CVec& h_r, const CVec& w,
                          double sigma_s2) {
  const cplx g = hermitian_inner(h_t, w);
  return norm2(h_r) * std::norm(g) / sigma_s2;
}

/// Downlink SNR at the UE: |h_c^H w|^2 / sigma_c2.
inline double comm_snr(const CVec& h_c, const CVec& w, double sigma_c2) {
  return std::norm(hermitian_inner(h_c, w)) / sigma_c2;
}

inline double rate_bps_hz(double snr_c) { return std::log2(1.0 + snr_c); }

/// Normalized correlation rho = h_c^H h_t / (||h_c|| ||h_t||).
inline cplx correlation(const CVec& h_c, const CVec& h_t) {
  const double nc = norm(h_c);
  const double nt = norm(h_t);
  if (nc == 0.0 || nt == 0.0)
    throw ZeroChannel("correlation: zero channel vector");
  return hermitian_inner(h_c, h_t) / (nc * nt);
}

struct Metrics {
  double snr_s = 0.0;
  double snr_c = 0.0;
  double rho_abs = 0.0;
  double rate = 0.0;  // bits/s/Hz
};

inline Metrics compute_metrics(const CVec& h_t, const CVec& h_r,
                               const CVec& h_c, const CVec& w,
                               double sigma_s2, double sigma_c2) {
  Metrics m;
  m.snr_s = sensing_snr(h_t, h_r, w, sigma_s2);
  m.snr_c = comm_snr(h_c, w, sigma_c2);
  m.rho_abs = std::abs(correlation(h_c, h_t));
  m.rate = rate_bps_hz(m.snr_c);
  return m;
}

struct Beamformer {
  CVec w;
  double power_budget = 0.0;
};

/// Transmit vector maximizing the sensing SNR subject to
/// |h_c^H w|^2 >= gamma0 sigma_c2 and ||w||^2 <= p_t.
///
/// Either the unconstrained optimum w = sqrt(p_t) h_t / ||h_t|| already
/// meets the comms floor, or the optimum lies in span{h_c, h_t} with the
/// comms constraint tight.  Throws Infeasible when even full power along
/// h_c cannot reach the floor.  All boundary checks carry relative slack
/// 1e-9 to absorb floating-point noise.
inline Beamformer optimal_beamformer(const CVec& h_t, const CVec& h_c,
                                     double p_t, double gamma0,
                                     double sigma_c2) {
  const double nt2 = norm2(h_t);
  const double nc2 = norm2(h_c);
  if (nt2 == 0.0 || nc2 == 0.0)
    throw ZeroChannel("optimal_beamformer: zero channel vector");

  const double need = gamma0 * sigma_c2;  // required |h_c^H w|^2
  const cplx dot = hermitian_inner(h_c, h_t);

  // Case 1: matched filter along h_t already satisfies the comms floor.
  if (p_t * std::norm(dot) >= need * nt2 * (1.0 - 1e-9)) {
    return Beamformer{scale(h_t, std::sqrt(p_t / nt2)), p_t};
  }

  if (need > p_t * nc2 * (1.0 + 1e-9))
    throw Infeasible("comms floor " + std::to_string(need) +
                     " exceeds p_t ||h_c||^2 = " + std::to_string(p_t * nc2));

  // Case 2: comms constraint tight; optimize over span{u1, u2} where
  // u1 = h_c / ||h_c|| and u2 is the Gram-Schmidt remainder of h_t.
  const CVec u1 = scale(h_c, 1.0 / std::sqrt(nc2));
  const cplx p1 = hermitian_inner(u1, h_t);
  const CVec r = sub(h_t, scale(u1, p1));
  const double rn = norm(r);

  const double x1_mag = std::sqrt(need / nc2);
  const double x2_mag2 = p_t - need / nc2;
  const double x2_mag = std::sqrt(std::max(0.0, x2_mag2));

  if (rn <= 1e-12 * std::sqrt(nt2)) {
    // h_t and h_c collinear.  Case 1 failing means p_t ||h_c||^2 < need
    // up to noise; inside the noise band the floor is met exactly at
    // (almost) full power, beyond it nothing helps.
    if (p_t * nc2 >= need * (1.0 - 1e-9)) {
      if (p_t * nc2 > need * (1.0 + 1e-6))
        throw DegenerateSpan(
            "collinear channels with contradictory case split");
      return Beamformer{scale(u1, x1_mag * phase(p1)), p_t};
    }
    throw Infeasible("collinear channels below the comms floor");
  }

  const CVec u2 = scale(r, 1.0 / rn);
  const cplx p2 = hermitian_inner(u2, h_t);
  const cplx x1 = x1_mag * phase(p1);
  const cplx x2 = x2_mag * phase(p2);
  return Beamformer{add(scale(u1, x1), scale(u2, x2)), p_t};
}

/// What the closed-form beamformer will deliver, predicted from channel
/// norms and |rho| alone.
struct RegimePrediction {
  bool strongly_coupled = false;
  double snr_s = 0.0;
  double snr_c = 0.0;
};

/// In the strongly coupled regime (|rho| >= sqrt(gamma0 sigma_c2 /
/// (p_t ||h_c||^2))) the matched filter wins and SNR_c rides along; below
/// it the comms floor binds, SNR_c pins to gamma0 and
///
///   sqrt(SNR_s) = ||h_r||/sigma_s *
///       (c1 |rho| ||h_t|| + sqrt(p_t - c1^2) ||h_t|| sqrt(1 - |rho|^2)),
///   c1 = sqrt(gamma0 sigma_c2) / ||h_c||.
///
/// Assumes a feasible instance (gamma0 sigma_c2 <= p_t ||h_c||^2).
inline RegimePrediction correlation_regime_prediction(
    double norm_ht, double norm_hr, double norm_hc, double rho_abs,
    double p_t, double gamma0, double sigma_c2, double sigma_s2) {
  RegimePrediction out;
  const double need = gamma0 * sigma_c2;
  const double nc2 = norm_hc * norm_hc;
  const double rho2 = rho_abs * rho_abs;
  out.strongly_coupled = (p_t * rho2 * nc2 >= need);
  if (out.strongly_coupled) {
    out.snr_s = p_t * norm_ht * norm_ht * norm_hr * norm_hr / sigma_s2;
    out.snr_c = p_t * nc2 * rho2 / sigma_c2;
  } else {
    const double c1 = std::sqrt(need) / norm_hc;
    const double c2 = std::sqrt(std::max(0.0, p_t - c1 * c1));
    const double amp = c1 * rho_abs * norm_ht +
                       c2 * norm_ht * std::sqrt(std::max(0.0, 1.0 - rho2));
    out.snr_s = norm_hr * norm_hr * amp * amp / sigma_s2;
    out.snr_c = gamma0;
  }
  return out;
}

}  // namespace risac
