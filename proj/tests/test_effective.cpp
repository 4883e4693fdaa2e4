#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nhflip/config.hpp"
#include "nhflip/effective.hpp"
#include "nhflip/quadrature.hpp"

using namespace nhflip;

namespace {

ValidatedConfig fig2_config() {
  SystemConfig c;
  c.n_states = 3;
  c.omega = {0.0, 0.0, 0.0};
  c.kappa_n = {0.0375, 0.025, 0.05};
  c.alpha_n = {-1, 0, 1};
  return validate_config(c);
}

ValidatedConfig single_state(double omega, double kappa_1) {
  SystemConfig c;
  c.n_states = 1;
  c.omega = {omega};
  c.kappa_n = {kappa_1};
  c.alpha_n = {0};
  return validate_config(c);
}

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("analytic coupling matrix, band-center values") {
  const auto cm = delta_analytic_lattice(fig2_config());
  // diagonal: kappa_n^2 / 2
  CHECK(cm.at(0, 0).real() == doctest::Approx(7.03125e-4).epsilon(1e-12));
  CHECK(cm.at(0, 0).imag() == doctest::Approx(0.0));
  // one site apart: i kappa_n kappa_m / 2
  CHECK(cm.at(0, 1).real() == doctest::Approx(0.0));
  CHECK(cm.at(0, 1).imag() ==
        doctest::Approx(0.0375 * 0.025 / 2.0).epsilon(1e-12));
}

TEST_CASE("band edge is guarded") {
  SystemConfig c;
  c.n_states = 1;
  c.omega = {2.0 - 1e-9};
  c.kappa_n = {0.05};
  c.alpha_n = {0};
  CHECK_THROWS_AS(delta_analytic_lattice(validate_config(c)),
                  BandEdgeSingularity);
}

TEST_CASE("spectral correlation matches finite-lattice eigenmode sums") {
  // open-chain eigenmodes: v_k(j) = sqrt(2/(M+1)) sin(q_k j),
  // E_k = -2 cos(q_k), q_k = k pi / (M+1); the correlation integral against
  // e^{-i w tau} must converge to the Bloch-basis band integral
  const auto vc = fig2_config();
  const auto S = lattice_spectral_correlation(vc);
  const int M = 20001;
  const int H = (M - 1) / 2;

  for (double tau : {0.0, 1.0, 5.0}) {
    const auto phi = memory_kernel(S, tau);
    for (int n = 0; n < 3; ++n)
      for (int m = 0; m < 3; ++m) {
        cplx oracle(0.0, 0.0);
        const int jn = vc.sys.alpha_n[n] + H + 1;
        const int jm = vc.sys.alpha_n[m] + H + 1;
        for (int k = 1; k <= M; ++k) {
          const double q = k * M_PI / (M + 1);
          const double e = -2.0 * std::cos(q);
          const double v = 2.0 / (M + 1) * std::sin(q * jn) * std::sin(q * jm);
          oracle += vc.sys.kappa_n[n] * vc.sys.kappa_n[m] * v *
                    std::exp(-IU * e * tau);
        }
        CHECK(std::abs(phi[n * 3 + m] - oracle) <
              1e-3 * vc.sys.kappa_n[n] * vc.sys.kappa_n[m]);
      }
  }
}

TEST_CASE("memory kernel closed forms") {
  const auto vc = fig2_config();
  const auto S = lattice_spectral_correlation(vc);

  SUBCASE("tau = 0 diagonal equals kappa_n^2") {
    const auto phi = memory_kernel(S, 0.0);
    for (int n = 0; n < 3; ++n)
      CHECK(phi[n * 3 + n].real() ==
            doctest::Approx(vc.sys.kappa_n[n] * vc.sys.kappa_n[n])
                .epsilon(1e-8));
  }

  SUBCASE("Bessel form at distance d") {
    // Phi_{n,m}(tau) = k_n k_m i^d J_d(2 tau)
    for (double tau : {0.5, 2.0, 7.0}) {
      const auto phi = memory_kernel(S, tau);
      for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m) {
          const int d = std::abs(vc.sys.alpha_n[n] - vc.sys.alpha_n[m]);
          cplx id(1.0, 0.0);
          for (int k = 0; k < d; ++k) id *= IU;
          const cplx want = vc.sys.kappa_n[n] * vc.sys.kappa_n[m] * id *
                            std::cyl_bessel_j(d, 2.0 * tau);
          CHECK(std::abs(phi[n * 3 + m] - want) < 1e-8);
        }
    }
  }

  SUBCASE("conjugate symmetry in tau") {
    const auto fwd = memory_kernel(S, 1.7);
    const auto bwd = memory_kernel(S, -1.7);
    for (int n = 0; n < 3; ++n)
      for (int m = 0; m < 3; ++m)
        CHECK(std::abs(fwd[n * 3 + m] - std::conj(bwd[m * 3 + n])) < 1e-10);
  }
}

TEST_CASE("zero spectral correlation gives zero kernel and matrices") {
  SpectralCorrelation zero;
  zero.n = 2;
  zero.w_min = -2.0;
  zero.w_max = 2.0;
  zero.s = [](int, int, double) { return cplx(0.0, 0.0); };
  for (const cplx& z : memory_kernel(zero, 3.0)) CHECK(z == cplx(0, 0));
  const std::vector<double> w = {0.1, -0.3};
  for (const cplx& z : delta_pv_quadrature(zero, w).delta)
    CHECK(std::abs(z) < 1e-12);
  for (const cplx& z : delta_from_kernel(zero, w).delta)
    CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("principal-value route reproduces the analytic matrix") {
  const auto vc = fig2_config();
  const auto want = delta_analytic_lattice(vc);
  const auto got =
      delta_pv_quadrature(lattice_spectral_correlation(vc), vc.sys.omega);
  for (int i = 0; i < 9; ++i)
    CHECK(rel_err(got.delta[i], want.delta[i]) < 1e-6);
}

TEST_CASE("even correlation about a diagonal frequency has real delta") {
  const auto vc = single_state(0.0, 0.05);
  const auto got =
      delta_pv_quadrature(lattice_spectral_correlation(vc), {0.0});
  CHECK(std::abs(got.at(0, 0).imag()) < 1e-10);
  CHECK(got.at(0, 0).real() == doctest::Approx(0.05 * 0.05 / 2.0).epsilon(1e-8));
}

TEST_CASE("kernel route reproduces the analytic matrix") {
  const auto vc = fig2_config();
  const auto want = delta_analytic_lattice(vc);
  const auto got =
      delta_from_kernel(lattice_spectral_correlation(vc), vc.sys.omega);
  for (int i = 0; i < 9; ++i)
    CHECK(rel_err(got.delta[i], want.delta[i]) < 1e-4);

  const auto one = single_state(0.0, 0.05);
  const auto d1 =
      delta_from_kernel(lattice_spectral_correlation(one), {0.0});
  CHECK(d1.at(0, 0).real() == doctest::Approx(1.25e-3).epsilon(1e-4));
}

TEST_CASE("regularized time integral agrees with its frequency form") {
  // at fixed eps the defining integral int_0^inf Phi(tau) e^{-eps tau} dtau
  // must match the per-frequency Lorentzian used inside delta_from_kernel;
  // for the single band-center state both equal k^2 / sqrt(4 + eps^2)
  const auto vc = single_state(0.0, 0.05);
  const auto S = lattice_spectral_correlation(vc);
  const double eps = 0.25;
  const double tau_max = 80.0;

  QuadratureOptions q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-8;
  auto f_time = [&](double tau) {
    return memory_kernel(S, tau)[0] * std::exp(-eps * tau);
  };
  cplx time_form(0.0, 0.0);
  for (double a = 0.0; a < tau_max; a += 10.0)
    time_form += integrate(f_time, a, a + 10.0, q);

  auto f_freq = [&](double w) { return S.s(0, 0, w) / cplx(eps, w); };
  const cplx freq_form = integrate_sqrt_endpoints(f_freq, S.w_min, S.w_max);

  const double closed = 0.05 * 0.05 / std::sqrt(4.0 + eps * eps);
  CHECK(std::abs(time_form - freq_form) < 1e-6 * closed);
  CHECK(rel_err(freq_form, cplx(closed, 0.0)) < 1e-6);
}

TEST_CASE("three-way delta agreement on fuzzed configs") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uk(0.01, 0.1), uw(-1.5, 1.5);
  std::uniform_int_distribution<int> ua(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    SystemConfig c;
    c.n_states = 2;
    c.omega = {uw(rng), uw(rng)};
    c.kappa_n = {uk(rng), uk(rng)};
    c.alpha_n = {ua(rng), 0};
    while (c.alpha_n[0] == c.alpha_n[1]) c.alpha_n[0] = ua(rng);
    const auto vc = validate_config(c);
    const auto S = lattice_spectral_correlation(vc);
    const auto want = delta_analytic_lattice(vc);
    const auto pv = delta_pv_quadrature(S, c.omega);
    const auto kq = delta_from_kernel(S, c.omega);
    for (int i = 0; i < 4; ++i) {
      CHECK(rel_err(pv.delta[i], want.delta[i]) < 1e-6);
      CHECK(rel_err(kq.delta[i], want.delta[i]) < 1e-4);
    }
  }
}

TEST_CASE("reduced rhs: scalar decay and exact sign flip") {
  const auto vc = single_state(0.0, 0.05);
  const auto delta = delta_analytic_lattice(vc);

  cplx a = cplx(1.0, 0.0), da;
  reduced_rhs(&a, 0.0, delta, {0.0}, 1.0, &da);
  CHECK(std::abs(da - (-delta.at(0, 0))) < 1e-15);

  // f = i means f^2 = -1: exact negation at any state and time
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto cm3 = delta_analytic_lattice(fig2_config());
  const std::vector<double> w3 = {0.0, 0.3, -0.2};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> av(3), dp(3), dm(3);
    for (auto& z : av) z = cplx(u(rng), u(rng));
    const double t = 10.0 * std::abs(u(rng));
    reduced_rhs(av.data(), t, cm3, w3, 1.0, dp.data());
    reduced_rhs(av.data(), t, cm3, w3, -1.0, dm.data());
    for (int i = 0; i < 3; ++i) CHECK(dp[i] == -dm[i]);
  }

  std::vector<cplx> zero(3, cplx(0, 0)), dz(3);
  reduced_rhs(zero.data(), 1.0, cm3, w3, 1.0, dz.data());
  for (const cplx& z : dz) CHECK(z == cplx(0, 0));
}

TEST_CASE("reduced integrator: scalar exponential decay") {
  const auto vc = single_state(0.0, 0.05);
  const auto delta = delta_analytic_lattice(vc);
  InitialExcitation init{{cplx(1, 0)}};
  const auto traj =
      integrate_reduced(init, delta, {0.0}, CouplingSchedule::hermitian_only(200.0),
                        200.0, 0.01, 100);
  const double rate = 2.0 * delta.at(0, 0).real();
  for (const auto& s : traj.samples)
    CHECK(std::abs(std::norm(s.a[0]) - std::exp(-rate * s.t)) < 1e-9);
}

TEST_CASE("degenerate echo is exact for arbitrary coupling matrices") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3;
    CouplingMatrix delta;
    delta.n = n;
    delta.delta.resize(n * n);
    for (auto& z : delta.delta) z = 0.02 * cplx(u(rng), u(rng));
    InitialExcitation init;
    for (int i = 0; i < n; ++i) init.a0.push_back(cplx(u(rng), u(rng)));
    const std::vector<double> w(n, 0.37);  // degenerate but nonzero
    const double T = 20.0;
    const auto traj = integrate_reduced(init, delta, w,
                                        CouplingSchedule::flip_at(T), 2 * T,
                                        0.01, 100);
    const auto& a_end = traj.samples.back().a;
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(a_end[i] - init.a0[i]) < 1e-6);
  }
}

TEST_CASE("protocol condition classification") {
  const auto vc = fig2_config();
  auto delta = delta_analytic_lattice(vc);

  SUBCASE("degenerate instance") {
    const auto r = protocol_conditions(delta, {0.0, 0.0, 0.0}, 200.0);
    CHECK(r.degenerate);
    CHECK_FALSE(r.rwa_ok);
  }

  SUBCASE("well separated detunings satisfy the rotating-wave regime") {
    SystemConfig c = vc.sys;
    c.omega = {0.0, 0.5, -0.5};
    const auto d = delta_analytic_lattice(validate_config(c));
    const auto r = protocol_conditions(d, c.omega, 200.0);
    CHECK_FALSE(r.degenerate);
    CHECK(r.rwa_ok);
  }

  SUBCASE("detunings comparable to the couplings fail it") {
    SystemConfig c = vc.sys;
    c.omega = {0.0, 0.05, -0.025};
    const auto d = delta_analytic_lattice(validate_config(c));
    const auto r = protocol_conditions(d, c.omega, 200.0);
    CHECK_FALSE(r.rwa_ok);
  }

  SUBCASE("short alternation freezes the degenerate instance") {
    const auto r = protocol_conditions(delta, {0.0, 0.0, 0.0}, 8.0);
    CHECK(r.frozen_ok);
  }
}
