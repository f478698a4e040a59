#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "risac/linalg.hpp"
#include "risac/rng.hpp"
#include "risac/scenario.hpp"

namespace risac {

/// Half-wavelength ULA steering vector: entry k = exp(j pi k sin(angle)),
/// k = 0..n-1.
inline CVec steering_vector(std::size_t n, double angle_rad) {
  CVec a(n);
  const double s = std::sin(angle_rad);
  for (std::size_t k = 0; k < n; ++k) {
    const double ph = std::numbers::pi * static_cast<double>(k) * s;
    a[k] = cplx(std::cos(ph), std::sin(ph));
  }
  return a;
}

/// Free-space amplitude gain over distance d: lambda / (4 pi d).
inline double free_space_amp(double d, double lambda) {
  return lambda / (4.0 * std::numbers::pi * d);
}

/// Unit-modulus reflection coefficients of the surface, one per element.
/// Every constructor and mutator keeps max_m ||v_m| - 1| below 1e-12, so
/// downstream code never re-checks.
class PhaseConfig {
 public:
  PhaseConfig() = default;

  static PhaseConfig from_angles(const std::vector<double>& mu) {
    CVec v(mu.size());
    for (std::size_t m = 0; m < mu.size(); ++m)
      v[m] = cplx(std::cos(mu[m]), std::sin(mu[m]));
    return PhaseConfig(std::move(v));
  }

  /// Entrywise projection onto the unit circle; zero entries go to 1.
  static PhaseConfig project(const CVec& raw) {
    CVec v(raw.size());
    for (std::size_t m = 0; m < raw.size(); ++m) v[m] = phase(raw[m]);
    return PhaseConfig(std::move(v));
  }

  /// Adopt a vector that is already unit-modulus (checked to 1e-9, then
  /// snapped exactly).
  static PhaseConfig from_vector(const CVec& v) {
    for (std::size_t m = 0; m < v.size(); ++m)
      if (std::abs(std::abs(v[m]) - 1.0) > 1e-9)
        throw std::invalid_argument(
            "PhaseConfig::from_vector: entry " + std::to_string(m) +
            " has modulus " + std::to_string(std::abs(v[m])));
    return project(v);
  }

  static PhaseConfig all_ones(std::size_t m) {
    return PhaseConfig(CVec(m, cplx(1.0, 0.0)));
  }

  /// Independent angles uniform on [0, 2 pi), one uniform draw per element
  /// in index order.
  static PhaseConfig random(std::size_t m, SeededRng& rng) {
    std::vector<double> mu(m);
    for (std::size_t i = 0; i < m; ++i)
      mu[i] = 2.0 * std::numbers::pi * rng.uniform01();
    return from_angles(mu);
  }

  const CVec& v() const { return v_; }
  std::size_t size() const { return v_.size(); }

  cplx operator[](std::size_t m) const { return v_[m]; }

  double angle(std::size_t m) const {
    if (m >= v_.size()) throw IndexOutOfRange("PhaseConfig::angle");
    return std::arg(v_[m]);
  }

  /// Replace element m, projecting the value onto the unit circle.
  void set(std::size_t m, cplx value) {
    if (m >= v_.size()) throw IndexOutOfRange("PhaseConfig::set");
    v_[m] = phase(value);
  }

 private:
  explicit PhaseConfig(CVec v) : v_(std::move(v)) {}
  CVec v_;
};

/// Everything about the propagation environment that does not depend on
/// the surface phases or the beamformer.  h_t / h_r / h_c are assembled
/// from these pieces as
///
///   h_t = alpha_t (a_t + U_t v)      BS -> target, transmit side
///   h_r = alpha_r (a_r + U_r v)      target -> BS, receive side
///   h_c = h_bu + U_c v               BS -> UE
struct ChannelSet {
  int n_tx = 0;
  int n_rx = 0;
  int m_ris = 0;

  cplx alpha_t;  // direct BS->target amplitude
  cplx alpha_r;  // direct target->BS amplitude
  cplx alpha_g;  // RIS->target amplitude

  CVec a_t;  // BS transmit steering toward the target
  CVec a_r;  // BS receive steering toward the target
  CVec b_tilde;  // RIS->target steering, scaled by alpha_g / alpha_t
  CVec b_bar;    // RIS->target steering, scaled by alpha_g / alpha_r

  CMat g_t;  // BS->RIS line-of-sight, transmit array side
  CMat g_r;  // BS->RIS line-of-sight, receive array side

  CVec h_bu;  // direct BS->UE fading channel
  CVec h_ru;  // RIS->UE fading channel

  CMat u_t;  // g_t diag(b_tilde)
  CMat u_r;  // g_r diag(b_bar)
  CMat u_c;  // g_t diag(h_ru)
};

namespace detail {
inline double checked_distance(Vec2 a, Vec2 b, const char* what) {
  const double d = distance(a, b);
  if (d <= 1e-6)
    throw DegenerateGeometry(std::string(what) +
                             ": nodes closer than 1e-6 m (d = " +
                             std::to_string(d) + ")");
  return d;
}

/// sin(angle) seen from a BS array laid along +y (broadside +x).
inline double bs_sin_toward(Vec2 bs, Vec2 p, double d) {
  return (p.y - bs.y) / d;
}

/// sin(angle) seen from a RIS array laid along +x (broadside -y).
inline double ris_sin_toward(Vec2 ris, Vec2 p, double d) {
  return (p.x - ris.x) / d;
}

inline CVec steering_from_sin(std::size_t n, double s) {
  CVec a(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ph = std::numbers::pi * static_cast<double>(k) * s;
    a[k] = cplx(std::cos(ph), std::sin(ph));
  }
  return a;
}

/// A diag(d), without forming the diagonal matrix.
inline CMat matmul_diag(const CMat& A, const CVec& d) {
  if (A.cols != d.size())
    throw DimensionMismatch("matmul_diag: " + std::to_string(A.cols) +
                            " cols vs " + std::to_string(d.size()));
  CMat B(A);
  for (std::size_t i = 0; i < B.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) B(i, j) *= d[j];
  return B;
}
}  // namespace detail

/// Synthesize all channel pieces for a scenario.  Deterministic given
/// (scenario, rng state); the fading draws consume the stream in a fixed
/// order: h_bu (n_tx entries) first, then h_ru (ris_elements entries).
inline ChannelSet build_channels(const Scenario& sc, SeededRng& rng) {
  sc.validate();
  const double lambda = sc.wavelength();
  const Vec2 ue = sc.ue_pos();

  const double d_bt =
      detail::checked_distance(sc.bs_pos, sc.target_pos, "BS-target");
  const double d_rt =
      detail::checked_distance(sc.ris_pos, sc.target_pos, "RIS-target");
  const double d_br =
      detail::checked_distance(sc.bs_pos, sc.ris_pos, "BS-RIS");
  const double d_bu = detail::checked_distance(sc.bs_pos, ue, "BS-UE");
  const double d_ru = detail::checked_distance(sc.ris_pos, ue, "RIS-UE");

  ChannelSet ch;
  ch.n_tx = sc.n_tx;
  ch.n_rx = sc.n_rx;
  ch.m_ris = sc.ris_elements;

  const double g_bt = free_space_amp(d_bt, lambda);
  const double g_rt = free_space_amp(d_rt, lambda);
  const double g_br = free_space_amp(d_br, lambda);
  ch.alpha_t = g_bt;
  ch.alpha_r = g_bt;
  ch.alpha_g = g_rt;

  const std::size_t nt = static_cast<std::size_t>(sc.n_tx);
  const std::size_t nr = static_cast<std::size_t>(sc.n_rx);
  const std::size_t m = static_cast<std::size_t>(sc.ris_elements);

  const double sin_bs_target = detail::bs_sin_toward(sc.bs_pos, sc.target_pos, d_bt);
  const double sin_bs_ris = detail::bs_sin_toward(sc.bs_pos, sc.ris_pos, d_br);
  const double sin_ris_bs = detail::ris_sin_toward(sc.ris_pos, sc.bs_pos, d_br);
  const double sin_ris_target =
      detail::ris_sin_toward(sc.ris_pos, sc.target_pos, d_rt);

  ch.a_t = detail::steering_from_sin(nt, sin_bs_target);
  ch.a_r = detail::steering_from_sin(nr, sin_bs_target);

  const CVec b = detail::steering_from_sin(m, sin_ris_target);
  ch.b_tilde = scale(b, ch.alpha_g / ch.alpha_t);
  ch.b_bar = scale(b, ch.alpha_g / ch.alpha_r);

  // Line-of-sight BS<->RIS link: rank one, unconjugated outer product.
  const CVec a_bs_ris_t = detail::steering_from_sin(nt, sin_bs_ris);
  const CVec a_bs_ris_r = detail::steering_from_sin(nr, sin_bs_ris);
  const CVec b_ris_bs = detail::steering_from_sin(m, sin_ris_bs);
  ch.g_t = scale(outer(a_bs_ris_t, b_ris_bs), cplx(g_br));
  ch.g_r = scale(outer(a_bs_ris_r, b_ris_bs), cplx(g_br));

  const double amp_bu =
      free_space_amp(1.0, lambda) * std::pow(d_bu, -sc.pathloss_exp_bu / 2.0);
  const double amp_ru =
      free_space_amp(1.0, lambda) * std::pow(d_ru, -sc.pathloss_exp_ru / 2.0);
  ch.h_bu = scale(sample_cn01(rng, nt), cplx(amp_bu));
  ch.h_ru = scale(sample_cn01(rng, m), cplx(amp_ru));

  ch.u_t = detail::matmul_diag(ch.g_t, ch.b_tilde);
  ch.u_r = detail::matmul_diag(ch.g_r, ch.b_bar);
  ch.u_c = detail::matmul_diag(ch.g_t, ch.h_ru);
  return ch;
}

/// Phase-independent sums s_j = a_j + U_j v (alpha factored out for the
/// sensing paths; the comms path carries none).
struct ChannelSums {
  CVec s_t;  // a_t + u_t v
  CVec s_r;  // a_r + u_r v
  CVec s_c;  // h_bu + u_c v  (this IS h_c)
};

inline ChannelSums channel_sums(const ChannelSet& ch, const CVec& v) {
  if (v.size() != static_cast<std::size_t>(ch.m_ris))
    throw DimensionMismatch("channel_sums: reflection vector length " +
                            std::to_string(v.size()) + " vs " +
                            std::to_string(ch.m_ris) + " elements");
  ChannelSums s;
  s.s_t = add(ch.a_t, matvec(ch.u_t, v));
  s.s_r = add(ch.a_r, matvec(ch.u_r, v));
  s.s_c = add(ch.h_bu, matvec(ch.u_c, v));
  return s;
}

inline ChannelSums channel_sums(const ChannelSet& ch, const PhaseConfig& v) {
  return channel_sums(ch, v.v());
}

struct AssembledChannels {
  CVec h_t;
  CVec h_r;
  CVec h_c;
};

/// Effective channels at a given surface configuration.
inline AssembledChannels assemble_h(const ChannelSet& ch,
                                    const PhaseConfig& v) {
  const ChannelSums s = channel_sums(ch, v);
  AssembledChannels out;
  out.h_t = scale(s.s_t, ch.alpha_t);
  out.h_r = scale(s.s_r, ch.alpha_r);
  out.h_c = s.s_c;
  return out;
}

/// One element's view of the channels: with v_m struck out, each channel
/// splits as  h_j = alpha_j (tilde_j + v_m * col_j)  (alpha_c = 1), and the
/// scalar couplings below drive the per-element phase subproblem:
///
///   K0 = ||hr_tilde||^2 + ||ur_col||^2        a0 = hr_tilde^H ur_col
///   K1 = |ht_tilde^H w|^2 + |ut_col^H w|^2    a1 = (ht_tilde^H w)(w^H ut_col)
///                                             ac = (hc_tilde^H w)(w^H uc_col)
struct PerElementTerms {
  std::size_t m = 0;
  CVec ht_tilde, hr_tilde, hc_tilde;
  CVec ut_col, ur_col, uc_col;
  cplx htw, utw, hcw, ucw;  // x^H w for the four vectors above
  double k0 = 0.0, k1 = 0.0;
  cplx a0, a1, ac;
};

namespace detail {
inline PerElementTerms element_terms_from_sums(const ChannelSet& ch,
                                               const ChannelSums& sums,
                                               const PhaseConfig& v,
                                               std::size_t m, const CVec& w) {
  PerElementTerms t;
  t.m = m;
  const cplx vm = v[m];
  t.ut_col = column(ch.u_t, m);
  t.ur_col = column(ch.u_r, m);
  t.uc_col = column(ch.u_c, m);
  t.ht_tilde = sub(sums.s_t, scale(t.ut_col, vm));
  t.hr_tilde = sub(sums.s_r, scale(t.ur_col, vm));
  t.hc_tilde = sub(sums.s_c, scale(t.uc_col, vm));

  t.htw = hermitian_inner(t.ht_tilde, w);
  t.utw = hermitian_inner(t.ut_col, w);
  t.hcw = hermitian_inner(t.hc_tilde, w);
  t.ucw = hermitian_inner(t.uc_col, w);

  t.k0 = norm2(t.hr_tilde) + norm2(t.ur_col);
  t.k1 = std::norm(t.htw) + std::norm(t.utw);
  t.a0 = hermitian_inner(t.hr_tilde, t.ur_col);
  t.a1 = t.htw * std::conj(t.utw);
  t.ac = t.hcw * std::conj(t.ucw);
  return t;
}
}  // namespace detail

/// Split channels around element m at the current configuration and
/// beamformer.  The caller is responsible for w respecting the power
/// budget; no power check happens here.
inline PerElementTerms decompose_element(const ChannelSet& ch,
                                         const PhaseConfig& v, std::size_t m,
                                         const CVec& w) {
  if (m >= static_cast<std::size_t>(ch.m_ris))
    throw IndexOutOfRange("decompose_element: element " + std::to_string(m) +
                          " of " + std::to_string(ch.m_ris));
  if (w.size() != static_cast<std::size_t>(ch.n_tx))
    throw DimensionMismatch("decompose_element: beamformer length " +
                            std::to_string(w.size()) + " vs n_tx " +
                            std::to_string(ch.n_tx));
  const ChannelSums sums = channel_sums(ch, v);
  return detail::element_terms_from_sums(ch, sums, v, m, w);
}

}  // namespace risac
