#pragma once

// Shared builders for the test suite: deterministic random vectors at O(1)
// scale (kind to finite differences) and channel fixtures.

#include <cstdint>

#include "risac/risac.hpp"

namespace testutil {

inline risac::CVec rand_cvec(risac::SeededRng& rng, std::size_t n,
                             double scale = 1.0) {
  return risac::scale(risac::sample_cn01(rng, n), risac::cplx(scale));
}

inline risac::CMat rand_cmat(risac::SeededRng& rng, std::size_t r,
                             std::size_t c, double scale = 1.0) {
  risac::CMat m(r, c);
  for (auto& e : m.a) {
    double z0, z1;
    rng.gaussian_pair(z0, z1);
    e = risac::cplx(z0, z1) * (scale / std::sqrt(2.0));
  }
  return m;
}

inline risac::cplx rand_unit(risac::SeededRng& rng) {
  const double a = 2.0 * std::numbers::pi * rng.uniform01();
  return {std::cos(a), std::sin(a)};
}

/// Synthetic propagation environment at O(1) scale.  Only the fields the
/// assembly/optimization paths consume are populated; the build-time
/// intermediates (g_t, g_r, b_tilde, b_bar) stay empty.
inline risac::ChannelSet synthetic_channels(risac::SeededRng& rng, int nt,
                                            int nr, int m) {
  risac::ChannelSet ch;
  ch.n_tx = nt;
  ch.n_rx = nr;
  ch.m_ris = m;
  ch.alpha_t = (0.5 + rng.uniform01()) * rand_unit(rng);
  ch.alpha_r = (0.5 + rng.uniform01()) * rand_unit(rng);
  ch.alpha_g = (0.5 + rng.uniform01()) * rand_unit(rng);
  const std::size_t snt = static_cast<std::size_t>(nt);
  const std::size_t snr = static_cast<std::size_t>(nr);
  const std::size_t sm = static_cast<std::size_t>(m);
  ch.a_t = rand_cvec(rng, snt);
  ch.a_r = rand_cvec(rng, snr);
  const double us = 1.0 / std::sqrt(static_cast<double>(m));
  ch.u_t = rand_cmat(rng, snt, sm, us);
  ch.u_r = rand_cmat(rng, snr, sm, us);
  ch.u_c = rand_cmat(rng, snt, sm, us);
  ch.h_bu = rand_cvec(rng, snt);
  ch.h_ru = rand_cvec(rng, sm);
  return ch;
}

/// Reference deployment channels for a given seed, drawn the same way the
/// solvers' full pipelines do (substream 0 of the seed).
inline risac::ChannelSet reference_channels(std::uint64_t seed,
                                            risac::Scenario* out_sc = nullptr) {
  risac::Scenario sc;
  sc.seed = seed;
  if (out_sc) *out_sc = sc;
  risac::SeededRng rng = risac::SeededRng(seed).child(0);
  return risac::build_channels(sc, rng);
}

inline bool rel_close(double a, double b, double tol) {
  const double diff = std::abs(a - b);
  const double scale = std::max(std::abs(a), std::abs(b));
  return diff <= tol * std::max(scale, 1e-300);
}

}  // namespace testutil
