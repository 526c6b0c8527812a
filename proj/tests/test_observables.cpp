#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nmjc/coherent.hpp"
#include "nmjc/engine.hpp"
#include "nmjc/observables.hpp"
#include "nmjc/quadrature.hpp"
#include "nmjc/spectrum.hpp"
#include "support.hpp"

using namespace nmjc;
using nmjc::testing::max_abs_diff;
using nmjc::testing::scaled;

namespace {

PhotonDistribution dist(std::vector<double> p) { return PhotonDistribution{std::move(p)}; }

// W(tau) averaged over momentum nodes for the exact engine.
double averaged_w(const std::vector<MomentumNode>& nodes, double tau) {
  const auto rho0 = initial_blocked_density(coherent_weights(2.0, 32));
  const auto sp = scaled(1.8, 7e-5, 5e-5);
  std::vector<double> w;
  for (const auto& n : nodes)
    w.push_back(population_inversion(evolve_density(rho0, sp, n.p_recoil, {EngineKind::exact_spectral}, tau).rho).value);
  return momentum_average(w, nodes);
}

}  // namespace

TEST_CASE("population inversion") {
  const auto rho0 = initial_blocked_density(coherent_weights(2.0, 32));
  CHECK(population_inversion(rho0).value == doctest::Approx(1.0).epsilon(1e-12));

  BlockedDensity g;
  g.ground_pop = 0.25;
  g.blocks.assign(3, Block::Zero());
  g.blocks[0](1, 1) = 0.5;
  g.blocks[2](1, 1) = 0.25;
  CHECK(population_inversion(g).value == doctest::Approx(-1.0));

  g.blocks[1](0, 0) = {0.0, 0.1};
  CHECK(population_inversion(g).imag_residue == doctest::Approx(0.1));
}

TEST_CASE("analytic undamped inversion") {
  const auto w = coherent_weights(2.0, 32);
  CHECK(analytic_inversion_undamped(w, 1.8, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  for (int n : {0, 3, 7}) {
    CoherentWeights fock;
    fock.w.assign(10, 0.0);
    fock.w[n] = 1.0;
    for (double tau : {0.3, 1.7, 12.0})
      CHECK(analytic_inversion_undamped(fock, 0.0, tau) == doctest::Approx(std::cos(2 * std::sqrt(n + 1.0) * tau)));
  }

  SUBCASE("exact engine follows it at gamma = eta = 0") {
    const auto rho0 = initial_blocked_density(w);
    const auto sp = scaled(1.8, 0.0, 0.0);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double tau = 0.05 * i;
      const auto rho = evolve_density(rho0, sp, 0.0, {EngineKind::exact_spectral}, tau).rho;
      worst = std::max(worst, std::abs(population_inversion(rho).value - analytic_inversion_undamped(w, 1.8, tau)));
    }
    CHECK(worst < 1e-9);
  }

  SUBCASE("revivals") {
    // Populations oscillate at 2 Omega_n, so revivals recur every pi / (Omega_4 - Omega_3).
    const double omega3 = rabi_frequency(1.8, 3), omega4 = rabi_frequency(1.8, 4);
    const double period = std::numbers::pi / (omega4 - omega3);
    CHECK(2 * period == doctest::Approx(27.2).epsilon(0.01));
    auto peak = [&](double lo, double hi) {
      double best_tau = lo, best = -2.0;
      for (double tau = lo; tau <= hi; tau += 1e-3) {
        const double v = analytic_inversion_undamped(w, 1.8, tau);
        if (v > best) best = v, best_tau = tau;
      }
      return std::pair{best_tau, best};
    };
    double collapse = 0.0;
    for (double tau = 5.0; tau <= 8.0; tau += 1e-3)
      collapse = std::max(collapse, std::abs(analytic_inversion_undamped(w, 1.8, tau)));
    const auto [t1, w1] = peak(10.0, 18.0);
    const auto [t2, w2] = peak(24.0, 30.0);
    CHECK(std::abs(t1 - period) < 1.0);
    CHECK(std::abs(t2 - 2 * period) < 1.0);
    CHECK(w1 > 3 * collapse);
    CHECK(w2 > 3 * collapse);
  }
}

TEST_CASE("photon distribution") {
  const auto w = coherent_weights(2.0, 32);
  const auto p0 = photon_distribution(initial_blocked_density(w));
  for (int n = 0; n <= 32; ++n) CHECK(p0.P[n] == doctest::Approx(w.probability(n)).epsilon(1e-14));
  CHECK(photon_distribution(initial_blocked_density(coherent_weights(0.0, 4))).P[0] == 1.0);

  const auto rho0 = initial_blocked_density(w);
  const auto sp = scaled(1.8, 0.01, 0.1);
  for (double tau : {0.5, 7.0, 33.0}) {
    const auto rho = evolve_density(rho0, sp, 0.4, {EngineKind::exact_spectral}, tau).rho;
    CHECK(std::abs(photon_distribution(rho).sum() - 1.0) < 1e-9);
  }
  SUBCASE("paper engine after repairs is a probability vector") {
    const auto sp2 = scaled(1.8, 7e-5, 5e-3);
    for (double tau : {5.0, 25.0, 50.0}) {
      const auto out = evolve_density(
          rho0, sp2, 0.0, {EngineKind::paper_spectral, SeriesVariant::definitions, true, true}, tau);
      const auto p = photon_distribution(out.rho);
      CHECK(std::abs(p.sum() - 1.0) < 1e-9);
      for (double v : p.P) CHECK(v > -1e-9);
    }
  }
}

TEST_CASE("mandel Q") {
  SUBCASE("poissonian") {
    const auto w = coherent_weights(2.0, 60);
    std::vector<double> p;
    for (int n = 0; n <= 60; ++n) p.push_back(w.probability(n));
    CHECK(std::abs(*mandel_q(dist(p))) < 1e-12);
  }
  SUBCASE("fock") {
    std::vector<double> p(8, 0.0);
    p[4] = 1.0;
    CHECK(*mandel_q(dist(p)) == doctest::Approx(-1.0));
  }
  SUBCASE("geometric with mean one") {
    // P(n) = 2^-(n+1): variance by direct summation is nbar^2 + nbar = 2.
    std::vector<double> p;
    long double m1 = 0, m2 = 0;
    for (int n = 0; n < 200; ++n) {
      p.push_back(std::ldexp(1.0, -(n + 1)));
      m1 += n * static_cast<long double>(p.back());
      m2 += static_cast<long double>(n) * n * p.back();
    }
    const double oracle = static_cast<double>((m2 - m1 * m1) / m1 - 1);
    CHECK(*mandel_q(dist(p)) == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(*mandel_q(dist(p)) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("renormalized by the sum") {
    std::vector<double> p{0.0, 0.0, 0.0, 0.3};
    CHECK(*mandel_q(dist(p)) == doctest::Approx(-1.0));
    const auto m = photon_moments(dist(p));
    CHECK(m.total == doctest::Approx(0.3));
    CHECK(m.mean == doctest::Approx(3.0));
  }
  CHECK_FALSE(mandel_q(dist({1.0, 0.0})).has_value());
  CHECK_THROWS_AS(mandel_q(dist({0.0, 0.0})), std::domain_error);
}

TEST_CASE("Q(0) vanishes for the truncated coherent state") {
  const auto p = photon_distribution(initial_blocked_density(coherent_weights(2.0, 32)));
  CHECK(std::abs(*mandel_q(p)) < 1e-6);
}

TEST_CASE("momentum average") {
  const std::vector<MomentumNode> one{{0.0, 1.0}};
  const std::vector<double> v{0.37};
  CHECK(momentum_average(v, one) == 0.37);
  const auto nodes = gauss_quadrature_nodes(1.0, 9);
  const std::vector<double> c(9, -0.8);
  CHECK(momentum_average(c, nodes) == doctest::Approx(-0.8).epsilon(1e-14));
  CHECK_THROWS_AS(momentum_average(v, nodes), std::invalid_argument);

  const std::vector<PhotonDistribution> ds{dist({1.0}), dist({0.0, 1.0})};
  const std::vector<MomentumNode> two{{-1.0, 0.25}, {1.0, 0.75}};
  const auto avg = momentum_average(ds, two);
  CHECK(avg.P.size() == 2);
  CHECK(avg.P[0] == 0.25);
  CHECK(avg.P[1] == 0.75);

  CHECK(std::abs(averaged_w(gauss_quadrature_nodes(1.0, 21), 5.0) - averaged_w(gauss_quadrature_nodes(1.0, 41), 5.0)) <
        1e-6);
}

TEST_CASE("dephased limit of the exact engine") {
  const auto rho0 = initial_blocked_density(coherent_weights(2.0, 32));
  const auto sp = scaled(1.8, 0.05, 0.0);
  const auto spec = system_spectrum(1.0, 1.8, 32);
  const auto limit = dephased_projection(rho0, spec);
  const double w_inf = population_inversion(limit).value;
  const auto q_inf = mandel_q(photon_distribution(limit));
  double prev_gap = 1e300;
  for (double tau : {10.0, 30.0, 50.0}) {
    const auto rho = evolve_density(rho0, sp, 0.0, {EngineKind::exact_spectral}, tau).rho;
    // Populations in the dressed basis are invariant, so the projection does not move.
    CHECK(max_abs_diff(dephased_projection(rho, spec), limit) < 1e-12);
    // Slowest coherence decays like exp(-gamma (2 Omega_0)^2 tau).
    const double bound = std::exp(-0.05 * 4 * std::pow(rabi_frequency(1.8, 0), 2) * tau);
    const double gap = std::abs(population_inversion(rho).value - w_inf);
    CHECK(gap <= 2 * bound);
    CHECK(std::abs(*mandel_q(photon_distribution(rho)) - *q_inf) <= 20 * bound);
    CHECK(gap <= prev_gap);
    prev_gap = gap;
  }
}
