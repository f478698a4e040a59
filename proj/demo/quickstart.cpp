// Minimal library tour: one channel realization, three solvers, one table.

#include <cstdio>

#include "risac/risac.hpp"

int main() {
  using namespace risac;

  Scenario sc;  // defaults: 15x15 BS, 64-element surface, 10 dB comms floor
  sc.seed = 42;

  SeededRng root(sc.seed);
  SeededRng rng_ch = root.child(0);
  const ChannelSet ch = build_channels(sc, rng_ch);

  const SolveReport base = solve_no_ris(ch, sc);

  SeededRng rng_sre = root.child(1);
  const SolveReport sre = sre_solve(ch, sc, SreParams{}, rng_sre);

  SeededRng rng_gm = root.child(2);
  const SolveReport gm = gain_max_solve(ch, sc, AoParams{}, rng_gm);

  auto db = [](double x) { return 10.0 * std::log10(x); };
  std::printf("%-10s %12s %12s %8s %10s %6s\n", "algorithm", "snr_s[dB]",
              "snr_c[dB]", "|rho|", "rate[bpcu]", "iters");
  for (const SolveReport* r : {&base, &sre, &gm}) {
    std::printf("%-10s %12.3f %12.3f %8.4f %10.4f %6d\n",
                r->algorithm.c_str(), db(r->metrics.snr_s),
                db(r->metrics.snr_c), r->metrics.rho_abs, r->metrics.rate,
                r->iterations);
  }
  return 0;
}
