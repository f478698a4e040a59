#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "helpers.hpp"
#include "risac/channel.hpp"

using namespace risac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
double cdist(const CVec& a, const CVec& b) { return norm(sub(a, b)); }
}  // namespace

TEST_CASE("steering vector entries walk the unit circle") {
  const CVec a = steering_vector(4, std::numbers::pi / 6.0);  // sin = 1/2
  const CVec want = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (std::size_t k = 0; k < 4; ++k)
    CHECK_THAT(std::abs(a[k] - want[k]), WithinAbs(0.0, 1e-12));

  const CVec broadside = steering_vector(5, 0.0);
  for (const cplx& e : broadside)
    CHECK_THAT(std::abs(e - cplx(1, 0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("free space amplitude") {
  const double lambda = Scenario{}.wavelength();
  CHECK_THAT(free_space_amp(40.0, lambda),
             WithinRel(0.00019880604830153928, 1e-12));
  CHECK_THAT(free_space_amp(1.0, lambda), WithinRel(lambda / (4.0 * std::numbers::pi), 1e-15));
}

TEST_CASE("PhaseConfig keeps every entry on the unit circle") {
  PhaseConfig p = PhaseConfig::project(CVec{cplx(3, 4), cplx(0, 0)});
  CHECK_THAT(std::abs(p[0] - cplx(0.6, 0.8)), WithinAbs(0.0, 1e-12));
  CHECK(p[1] == cplx(1, 0));  // zero projects to 1

  p.set(0, cplx(0, -9));
  CHECK_THAT(std::abs(p[0] - cplx(0, -1)), WithinAbs(0.0, 1e-12));
  CHECK_THROWS_AS(p.set(5, cplx(1, 0)), IndexOutOfRange);

  CHECK_THROWS_AS(PhaseConfig::from_vector(CVec{cplx(2, 0)}),
                  std::invalid_argument);
  CHECK_NOTHROW(PhaseConfig::from_vector(CVec{cplx(0, 1)}));

  const PhaseConfig ones = PhaseConfig::all_ones(3);
  CHECK(ones.size() == 3);
  CHECK(ones[2] == cplx(1, 0));

  const std::vector<double> mu = {0.3, -1.2};
  const PhaseConfig fa = PhaseConfig::from_angles(mu);
  CHECK_THAT(fa.angle(0), WithinAbs(0.3, 1e-15));
  CHECK_THAT(fa.angle(1), WithinAbs(-1.2, 1e-15));

  SeededRng rng(5);
  const PhaseConfig r = PhaseConfig::random(100, rng);
  for (std::size_t m = 0; m < r.size(); ++m)
    CHECK_THAT(std::abs(r[m]), WithinAbs(1.0, 1e-12));
  SeededRng rng2(5);
  const PhaseConfig r2 = PhaseConfig::random(100, rng2);
  CHECK(cdist(r.v(), r2.v()) == 0.0);
}

TEST_CASE("build_channels shapes and frozen anchors") {
  const ChannelSet ch = testutil::reference_channels(1);
  CHECK(ch.a_t.size() == 15);
  CHECK(ch.a_r.size() == 15);
  CHECK(ch.h_bu.size() == 15);
  CHECK(ch.h_ru.size() == 64);
  CHECK(ch.u_t.rows == 15);
  CHECK(ch.u_t.cols == 64);
  CHECK(ch.u_r.rows == 15);
  CHECK(ch.u_c.cols == 64);
  CHECK(ch.g_t.rows == 15);
  CHECK(ch.g_t.cols == 64);

  CHECK_THAT(ch.alpha_t.real(), WithinRel(0.00019880604830153928, 1e-12));
  CHECK(ch.alpha_t == ch.alpha_r);
  CHECK_THAT(ch.alpha_g.real(), WithinRel(0.00025147197010012541, 1e-12));

  // frozen fading draws (pins the generator and the draw order)
  CHECK_THAT(norm2(ch.h_bu), WithinRel(3.2166915794996718e-08, 1e-12));
  CHECK_THAT(norm2(ch.h_ru), WithinRel(5.5542276453144277e-07, 1e-12));
  CHECK_THAT(ch.h_bu[0].real(), WithinRel(-1.5748445414245752e-05, 1e-12));
  CHECK_THAT(ch.h_bu[0].imag(), WithinRel(4.1018706663393735e-05, 1e-12));
  CHECK_THAT(ch.u_t(0, 0).real(), WithinRel(0.00023709004711485251, 1e-12));
  CHECK_THAT(std::abs(ch.u_t(0, 0).imag()), WithinAbs(0.0, 1e-18));
}

TEST_CASE("line of sight pieces have the advertised structure") {
  const ChannelSet ch = testutil::reference_channels(3);
  const Scenario sc;
  const double g_br =
      free_space_amp(distance(sc.bs_pos, sc.ris_pos), sc.wavelength());

  // rank one with constant-magnitude entries
  for (std::size_t i = 0; i < ch.g_t.rows; i += 5)
    for (std::size_t j = 0; j < ch.g_t.cols; j += 13) {
      CHECK_THAT(std::abs(ch.g_t(i, j)), WithinRel(g_br, 1e-12));
      const cplx minor =
          ch.g_t(i, j) * ch.g_t(0, 0) - ch.g_t(i, 0) * ch.g_t(0, j);
      CHECK_THAT(std::abs(minor), WithinAbs(0.0, 1e-12 * g_br * g_br));
    }

  // b_tilde/b_bar are the target steering vector rescaled by alpha_g/alpha
  const double ratio = std::abs(ch.alpha_g / ch.alpha_t);
  for (std::size_t m = 0; m < ch.b_tilde.size(); m += 7) {
    CHECK_THAT(std::abs(ch.b_tilde[m]), WithinRel(ratio, 1e-12));
    CHECK_THAT(std::abs(ch.b_tilde[m] - ch.b_bar[m]), WithinAbs(0.0, 1e-18));
  }

  // cascades equal the generic product G diag(b)
  const CMat ut_ref = matmul(ch.g_t, diag(ch.b_tilde));
  const CMat ur_ref = matmul(ch.g_r, diag(ch.b_bar));
  const CMat uc_ref = matmul(ch.g_t, diag(ch.h_ru));
  for (std::size_t i = 0; i < ut_ref.a.size(); ++i) {
    CHECK(ch.u_t.a[i] == ut_ref.a[i]);
    CHECK(ch.u_r.a[i] == ur_ref.a[i]);
    CHECK(ch.u_c.a[i] == uc_ref.a[i]);
  }
}

TEST_CASE("fading amplitudes follow the distance law and draw order") {
  const Scenario sc;
  SeededRng rng = SeededRng(1).child(0);
  const ChannelSet ch = testutil::reference_channels(1);

  const double lambda = sc.wavelength();
  const double amp_bu = free_space_amp(1.0, lambda) *
                        std::pow(distance(sc.bs_pos, sc.ue_pos()), -1.5);
  const double amp_ru = free_space_amp(1.0, lambda) *
                        std::pow(distance(sc.ris_pos, sc.ue_pos()), -1.1);
  const CVec want_bu = scale(sample_cn01(rng, 15), cplx(amp_bu));
  const CVec want_ru = scale(sample_cn01(rng, 64), cplx(amp_ru));
  CHECK(cdist(ch.h_bu, want_bu) == 0.0);
  CHECK(cdist(ch.h_ru, want_ru) == 0.0);
}

TEST_CASE("degenerate geometry is rejected") {
  Scenario sc;
  sc.target_pos = sc.ris_pos;
  SeededRng rng(1);
  CHECK_THROWS_AS(build_channels(sc, rng), DegenerateGeometry);

  Scenario sc2;
  sc2.ue_pos_override = sc2.bs_pos;
  SeededRng rng2(1);
  CHECK_THROWS_AS(build_channels(sc2, rng2), DegenerateGeometry);
}

TEST_CASE("assembly matches the defining equations") {
  const ChannelSet ch = testutil::reference_channels(7);
  SeededRng rng(21);
  const PhaseConfig v = PhaseConfig::random(64, rng);
  const AssembledChannels h = assemble_h(ch, v);

  // independent assembly from the raw pieces
  const CVec ht_ref =
      scale(add(ch.a_t, matvec(matmul(ch.g_t, diag(ch.b_tilde)), v.v())),
            ch.alpha_t);
  const CVec hr_ref =
      scale(add(ch.a_r, matvec(matmul(ch.g_r, diag(ch.b_bar)), v.v())),
            ch.alpha_r);
  const CVec hc_ref =
      add(ch.h_bu, matvec(matmul(ch.g_t, diag(ch.h_ru)), v.v()));

  CHECK(cdist(h.h_t, ht_ref) <= 1e-12 * norm(ht_ref));
  CHECK(cdist(h.h_r, hr_ref) <= 1e-12 * norm(hr_ref));
  CHECK(cdist(h.h_c, hc_ref) <= 1e-12 * norm(hc_ref));

  CHECK_THROWS_AS(assemble_h(ch, PhaseConfig::all_ones(63)),
                  DimensionMismatch);
}

TEST_CASE("surface with no coupling leaves the direct channels") {
  SeededRng rng(31);
  ChannelSet ch = testutil::synthetic_channels(rng, 4, 4, 8);
  ch.u_t = CMat::zero(4, 8);
  ch.u_r = CMat::zero(4, 8);
  ch.u_c = CMat::zero(4, 8);
  const AssembledChannels h = assemble_h(ch, PhaseConfig::all_ones(8));
  CHECK(cdist(h.h_t, scale(ch.a_t, ch.alpha_t)) == 0.0);
  CHECK(cdist(h.h_r, scale(ch.a_r, ch.alpha_r)) == 0.0);
  CHECK(cdist(h.h_c, ch.h_bu) == 0.0);
}

TEST_CASE("decompose_element splits every channel exactly") {
  SeededRng rng(41);
  const ChannelSet ch = testutil::synthetic_channels(rng, 5, 4, 6);
  const PhaseConfig v = PhaseConfig::random(6, rng);
  const CVec w = testutil::rand_cvec(rng, 5);
  const ChannelSums sums = channel_sums(ch, v);

  for (std::size_t m = 0; m < 6; ++m) {
    const PerElementTerms t = decompose_element(ch, v, m, w);
    CHECK(t.m == m);

    // putting the element back reproduces the full sums
    const CVec st_re = add(t.ht_tilde, scale(t.ut_col, v[m]));
    const CVec sr_re = add(t.hr_tilde, scale(t.ur_col, v[m]));
    const CVec sc_re = add(t.hc_tilde, scale(t.uc_col, v[m]));
    CHECK(cdist(st_re, sums.s_t) <= 1e-12 * norm(sums.s_t));
    CHECK(cdist(sr_re, sums.s_r) <= 1e-12 * norm(sums.s_r));
    CHECK(cdist(sc_re, sums.s_c) <= 1e-12 * norm(sums.s_c));

    // the split scalars reproduce the exact norms and powers
    const double mu = v.angle(m);
    const cplx e = cplx(std::cos(mu), std::sin(mu));
    const double k0_exact = t.k0 + 2.0 * (e * t.a0).real();
    CHECK_THAT(k0_exact, WithinRel(norm2(sums.s_r), 1e-12));
    const double k1_exact = t.k1 + 2.0 * (e * t.a1).real();
    CHECK_THAT(k1_exact,
               WithinRel(std::norm(hermitian_inner(sums.s_t, w)), 1e-12));
    const double pc_exact =
        std::norm(t.hcw) + std::norm(t.ucw) + 2.0 * (e * t.ac).real();
    CHECK_THAT(pc_exact,
               WithinRel(std::norm(hermitian_inner(sums.s_c, w)), 1e-12));
  }

  CHECK_THROWS_AS(decompose_element(ch, v, 6, w), IndexOutOfRange);
  CHECK_THROWS_AS(decompose_element(ch, v, 0, CVec(4)), DimensionMismatch);
}
