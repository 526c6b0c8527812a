#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nmjc/coherent.hpp"
#include "nmjc/dense.hpp"
#include "nmjc/density.hpp"
#include "nmjc/errors.hpp"
#include "nmjc/params.hpp"
#include "nmjc/quadrature.hpp"
#include "nmjc/spectrum.hpp"

using namespace nmjc;

namespace {

PhysicalParams figure_params() {
  PhysicalParams p;
  p.lambda_coupling = 1e6;
  p.delta0 = 1.8e6;
  p.omega_recoil = 0.5e6;
  p.qg_product = 0.1e7;
  p.alpha_coherent = 2.0;
  return p;
}

// Poisson pmf by repeated multiplication in extended precision.
long double poisson_pmf(long double mean, int n) {
  long double v = std::exp(-mean);
  for (int k = 1; k <= n; ++k) v *= mean / k;
  return v;
}

}  // namespace

TEST_CASE("validate_and_scale reduces to units of lambda") {
  auto p = figure_params();
  const auto sp = validate_and_scale(p);
  CHECK(sp.doppler_coeff == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sp.grav_drift == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(sp.delta0_s == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(sp.tau_grid == std::vector<double>{0.0});

  p.qg_product = 0.0;
  CHECK(validate_and_scale(p).grav_drift == 0.0);

  // grav_drift = qg / lambda^2 is dimensionless: rescaling lambda by k and qg by k^2 leaves it fixed.
  auto q = figure_params();
  q.lambda_coupling *= 3.0;
  q.qg_product = *q.qg_product * 9.0;
  q.omega_recoil *= 3.0;
  q.delta0 *= 3.0;
  CHECK(validate_and_scale(q).grav_drift == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(validate_and_scale(q).doppler_coeff == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("scaling round trip returns delta0 / lambda exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5e6, 5e6);
  for (int i = 0; i < 100; ++i) {
    auto p = figure_params();
    p.delta0 = u(rng);
    const auto sp = validate_and_scale(p);
    CHECK(doppler_detuning(sp, 0.0, 0.0) == p.delta0 / p.lambda_coupling);
  }
}

TEST_CASE("validate_and_scale rejects bad inputs") {
  auto p = figure_params();
  p.gamma_damping = -1e-3;
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p = figure_params();
  p.eta_nonmarkov = -1.0;
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p = figure_params();
  p.delta0 = std::nan("");
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p = figure_params();
  p.lambda_coupling = 0.0;
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p = figure_params();
  p.fock_cutoff = 0;
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p = figure_params();
  p.sigma0_momentum_width = 0.0;
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
}

TEST_CASE("recoil frequency must agree with q and M when both are given") {
  auto p = figure_params();
  p.q_wavenumber = 1e7;
  p.atom_mass = 1e-26;
  // hbar q^2 / 2M = 5.27e5 rad/s, not the quoted 0.5e6.
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p.omega_recoil = kHbar * 1e14 / 2e-26;
  CHECK_NOTHROW(validate_and_scale(p));
  p.omega_recoil *= 1.0 + 1e-8;
  CHECK_NOTHROW(validate_and_scale(p));
}

TEST_CASE("coherent tail beyond the cutoff is rejected unless allowed") {
  auto p = figure_params();
  p.fock_cutoff = 10;  // Poisson(4) tail beyond 10 is ~2.8e-3
  CHECK_THROWS_AS(validate_and_scale(p), ValidationError);
  p.allow_coherent_tail = true;
  const auto sp = validate_and_scale(p);
  REQUIRE(sp.warnings.size() == 1);
  CHECK(sp.warnings[0].find("tail") != std::string::npos);
  p.fock_cutoff = 32;
  p.allow_coherent_tail = false;
  CHECK_NOTHROW(validate_and_scale(p));
}

TEST_CASE("tau grid starts at zero and is strictly increasing") {
  const auto g = make_tau_grid(50.0, 0.05);
  CHECK(g.size() == 1001);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(50.0));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK_THROWS_AS(make_tau_grid(1.0, 0.0), ValidationError);
}

TEST_CASE("coherent weights") {
  SUBCASE("vacuum") {
    const auto w = coherent_weights(0.0, 5);
    CHECK(w.w[0] == std::complex<double>(1.0, 0.0));
    for (std::size_t n = 1; n < w.size(); ++n) CHECK(std::abs(w.w[n]) == 0.0);
  }
  SUBCASE("alpha = 2") {
    const auto w = coherent_weights(2.0, 32);
    // exp(-2), and the Poisson pmf(4; 4) = e^-4 4^4 / 4!
    CHECK(w.w[0].real() == doctest::Approx(0.1353352832366127).epsilon(1e-14));
    CHECK(w.probability(4) == doctest::Approx(static_cast<double>(poisson_pmf(4.0L, 4))).epsilon(1e-13));
    CHECK(w.probability(4) == doctest::Approx(0.195367).epsilon(1e-6));
    for (int n = 0; n <= 32; ++n)
      CHECK(w.probability(n) == doctest::Approx(static_cast<double>(poisson_pmf(4.0L, n))).epsilon(1e-12));
    CHECK(w.norm_squared() <= 1.0 + 1e-15);
    CHECK(w.norm_squared() >= 1.0 - 1e-12);
  }
  SUBCASE("phase of alpha carries into the amplitudes") {
    const auto w = coherent_weights(std::polar(1.5, 0.3), 8);
    for (int n = 1; n <= 8; ++n) CHECK(std::remainder(std::arg(w.w[n]) - 0.3 * n, 2 * std::numbers::pi) ==
                                       doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("large cutoff stays finite") {
    const auto w = coherent_weights(2.0, 400);
    CHECK(std::isfinite(w.norm_squared()));
    CHECK(w.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(coherent_weights(1.0, 0), ValidationError);
}

TEST_CASE("coherent tail is the direct Poisson sum") {
  long double tail = 0.0L;
  for (int n = 11; n < 200; ++n) tail += poisson_pmf(4.0L, n);
  CHECK(coherent_tail(2.0, 10) == doctest::Approx(static_cast<double>(tail)).epsilon(1e-12));
  CHECK(coherent_tail(2.0, 32) < 1e-17);
  CHECK(coherent_tail(0.0, 1) == 0.0);
}

TEST_CASE("gauss quadrature nodes") {
  SUBCASE("single node") {
    const auto n = gauss_quadrature_nodes(1.0, 1);
    REQUIRE(n.size() == 1);
    CHECK(n[0].p_recoil == 0.0);
    CHECK(n[0].weight == 1.0);
  }
  SUBCASE("moments against exp(-2p^2/sigma^2)") {
    for (double sigma : {0.5, 1.0, 2.3}) {
      for (int count : {3, 7, 21, 41}) {
        const auto nodes = gauss_quadrature_nodes(sigma, count);
        double m0 = 0, m2 = 0, m4 = 0;
        for (const auto& n : nodes) {
          m0 += n.weight;
          m2 += n.weight * n.p_recoil * n.p_recoil;
          m4 += n.weight * std::pow(n.p_recoil, 4);
        }
        // Normalized Gaussian of variance sigma^2/4: <p^2> = sigma^2/4, <p^4> = 3 sigma^4/16.
        CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(m2 - sigma * sigma / 4.0) < 1e-10);
        CHECK(std::abs(m4 - 3.0 * std::pow(sigma, 4) / 16.0) < 1e-10);
      }
    }
    const auto n21 = gauss_quadrature_nodes(1.0, 21);
    double m2 = 0;
    for (const auto& n : n21) m2 += n.weight * n.p_recoil * n.p_recoil;
    CHECK(std::abs(m2 - 0.25) < 1e-12);
  }
  SUBCASE("degree 2 count - 1 exactness") {
    // <p^{2k}> = (sigma^2/4)^k (2k-1)!!
    const int count = 6;
    const auto nodes = gauss_quadrature_nodes(1.0, count);
    for (int k = 0; 2 * k <= 2 * count - 1; ++k) {
      double m = 0, odd = 0;
      for (const auto& n : nodes) {
        m += n.weight * std::pow(n.p_recoil, 2 * k);
        odd += n.weight * std::pow(n.p_recoil, 2 * k + 1);
      }
      double expect = std::pow(0.25, k);
      for (int j = 2 * k - 1; j > 0; j -= 2) expect *= j;
      CHECK(m == doctest::Approx(expect).epsilon(1e-11));
      CHECK(std::abs(odd) < 1e-14);
    }
  }
  SUBCASE("mirror symmetry") {
    const auto nodes = gauss_quadrature_nodes(1.0, 21);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(nodes[i].p_recoil == -nodes[nodes.size() - 1 - i].p_recoil);
      CHECK(nodes[i].weight == nodes[nodes.size() - 1 - i].weight);
    }
    CHECK(nodes[10].p_recoil == 0.0);
  }
  CHECK_THROWS_AS(gauss_quadrature_nodes(1.0, 0), ValidationError);
  CHECK_THROWS_AS(gauss_quadrature_nodes(1.0, -3), ValidationError);
}

TEST_CASE("doppler detuning") {
  ScaledParams sp;
  sp.delta0_s = 1.8;
  sp.doppler_coeff = 1.0;
  CHECK(doppler_detuning(sp, 0.0, 0.0) == 1.8);
  CHECK(doppler_detuning(sp, 1.0, 0.0) == doctest::Approx(0.8).epsilon(1e-15));
  sp.grav_drift = 1e-6;
  CHECK(doppler_detuning(sp, 0.0, 50.0) == doctest::Approx(1.79995).epsilon(1e-15));
}

TEST_CASE("rabi frequency") {
  CHECK(rabi_frequency(0.0, 3) == 2.0);
  const double r = rabi_frequency(1.8, 3);
  CHECK(r == doctest::Approx(2.05).epsilon(1e-15));
  CHECK(r * r == doctest::Approx(4.2025).epsilon(1e-15));
  CHECK(rabi_frequency(1.8, 0) == doctest::Approx(std::sqrt(0.45 * 0.45 + 1.0)).epsilon(1e-15));
  CHECK(rabi_frequency(1.8, 0) == doctest::Approx(1.0965856).epsilon(1e-7));
}

TEST_CASE("block spectrum examples") {
  auto s = block_spectrum(1.0, 0.0, 0);
  CHECK(s.eig_plus == doctest::Approx(1.5));
  CHECK(s.eig_minus == doctest::Approx(-0.5));

  s = block_spectrum(0.0, 0.0, 0);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(s.mix_cos == doctest::Approx(h).epsilon(1e-15));
  CHECK(s.mix_sin == doctest::Approx(h).epsilon(1e-15));

  s = block_spectrum(0.0, 1.8, 3);
  CHECK(s.eig_plus == doctest::Approx(2.05).epsilon(1e-15));
  CHECK(s.eig_minus == doctest::Approx(-2.05).epsilon(1e-15));

  CHECK(ground_energy(1.0, 1.8) == doctest::Approx(-0.5 - 0.45));
}

TEST_CASE("eigen-reconstruction over random blocks") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ud(-5.0, 5.0), uw(0.0, 10.0);
  std::uniform_int_distribution<int> un(0, 32);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double delta = ud(rng), omega = uw(rng);
    const int n = un(rng);
    const auto s = block_spectrum(omega, delta, n);
    const Eigen::Matrix2d v = s.eigenvectors();
    const Eigen::Matrix2d rebuilt = v * s.eigenvalues().asDiagonal() * v.transpose();
    worst = std::max(worst, (rebuilt - assemble_block(omega, delta, n)).cwiseAbs().maxCoeff());
    CHECK(s.eig_plus >= s.eig_minus);
    CHECK(std::abs(s.mix_cos * s.mix_cos + s.mix_sin * s.mix_sin - 1.0) < 1e-12);
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("initial blocked density") {
  const auto vac = initial_blocked_density(coherent_weights(0.0, 4));
  CHECK(vac.blocks[0](0, 0) == std::complex<double>(1.0));
  CHECK(vac.ground_pop == 0.0);
  for (std::size_t n = 1; n < vac.blocks.size(); ++n) CHECK(vac.blocks[n].norm() == 0.0);

  const auto w = coherent_weights(2.0, 32);
  const auto rho = initial_blocked_density(w);
  CHECK(rho.trace().real() >= 1.0 - 1e-12);
  CHECK(rho.blocks[4](0, 0).real() == doctest::Approx(static_cast<double>(poisson_pmf(4.0L, 4))).epsilon(1e-13));
  for (const auto& b : rho.blocks) {
    CHECK(b(0, 1) == std::complex<double>(0.0));
    CHECK(b(1, 1) == std::complex<double>(0.0));
  }
  const auto per_node = initial_blocked_density(w, 5);
  CHECK(per_node.size() == 5);
  CHECK(per_node[3].blocks[4] == rho.blocks[4]);
}

TEST_CASE("powers of the Hamiltonian keep block support") {
  const dense::DenseSystem sys{4, 1.0, 1.3};
  const Eigen::MatrixXcd h = sys.hamiltonian();
  for (int n = 0; n + 1 <= sys.fock_cutoff; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sys.dim());
    v[dense::DenseSystem::excited(n)] = {0.6, 0.1};
    v[dense::DenseSystem::ground(n + 1)] = {-0.2, 0.7};
    for (int k = 1; k <= 6; ++k) {
      v = h * v;
      for (int i = 0; i < sys.dim(); ++i)
        if (i != dense::DenseSystem::excited(n) && i != dense::DenseSystem::ground(n + 1)) CHECK(std::abs(v[i]) == 0.0);
    }
  }
  // Dense free part and interaction commute.
  CHECK((sys.free_part() * sys.interaction_part() - sys.interaction_part() * sys.free_part()).norm() < 1e-14);
}
