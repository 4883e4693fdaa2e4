#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nhflip/config.hpp"
#include "nhflip/effective.hpp"
#include "nhflip/eigen.hpp"
#include "nhflip/lattice.hpp"

using namespace nhflip;

namespace {

std::vector<cplx> random_matrix(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(n * n);
  for (auto& z : a) z = cplx(u(rng), u(rng));
  return a;
}

double frob(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("diagonal matrices return the diagonal") {
  const int n = 4;
  std::vector<cplx> a(n * n, cplx(0, 0));
  const std::vector<cplx> d = {cplx(1, 2), cplx(-3, 0), cplx(0, 5),
                               cplx(0.5, -0.5)};
  for (int i = 0; i < n; ++i) a[i * n + i] = d[i];
  auto ev = dense_eigenvalues(a, n);
  for (const cplx& want : d) {
    const bool found = std::any_of(ev.begin(), ev.end(), [&](cplx l) {
      return std::abs(l - want) < 1e-12;
    });
    CHECK(found);
  }
}

TEST_CASE("characteristic polynomial residuals on random matrices") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + (int)(rng() % 8);
    const auto a = random_matrix(n, rng);
    const auto ev = dense_eigenvalues(a, n);
    REQUIRE((int)ev.size() == n);
    const double bound = 1e-8 * std::pow(frob(a), n);
    for (const cplx& l : ev) CHECK(std::abs(char_poly(a, n, l)) <= bound);
  }
}

TEST_CASE("eigenvalue multiset is stable under similarity transforms") {
  std::mt19937 rng(99);
  const int n = 6;
  const auto a = random_matrix(n, rng);
  // similarity by a unitary-ish rotation built from Givens factors
  std::vector<cplx> m = a;
  auto rotate = [&](int i, int j, double th) {
    const double c = std::cos(th), s = std::sin(th);
    for (int k = 0; k < n; ++k) {  // rows
      const cplx mi = m[i * n + k], mj = m[j * n + k];
      m[i * n + k] = c * mi + s * mj;
      m[j * n + k] = -s * mi + c * mj;
    }
    for (int k = 0; k < n; ++k) {  // cols (inverse)
      const cplx mi = m[k * n + i], mj = m[k * n + j];
      m[k * n + i] = c * mi + s * mj;
      m[k * n + j] = -s * mi + c * mj;
    }
  };
  rotate(0, 3, 0.7);
  rotate(1, 4, -1.2);
  rotate(2, 5, 2.1);

  auto ev_a = dense_eigenvalues(a, n);
  auto ev_m = dense_eigenvalues(m, n);
  auto key = [](const cplx& x, const cplx& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(ev_a.begin(), ev_a.end(), key);
  std::sort(ev_m.begin(), ev_m.end(), key);
  for (int i = 0; i < n; ++i) CHECK(std::abs(ev_a[i] - ev_m[i]) < 1e-6);
}

TEST_CASE("dark state: interference suppresses one decay channel") {
  // two identical states two sites apart: Delta = (k^2/2) [[1,-1],[-1,1]]
  SystemConfig c;
  c.n_states = 2;
  c.omega = {0.0, 0.0};
  c.kappa_n = {0.05, 0.05};
  c.alpha_n = {0, 2};
  const auto delta = delta_analytic_lattice(validate_config(c));
  const auto modes = eigen_analysis(delta);
  int bound = 0;
  for (const auto& m : modes) bound += m.bound_state ? 1 : 0;
  CHECK(bound == 1);

  // oracle: the full lattice shows fractional decay toward the dark-state
  // projection (initial (1,0) has overlap 1/2 with the trapped state)
  RunSpec spec;
  spec.sys = c;
  spec.schedule = CouplingSchedule::hermitian_only(400.0);
  spec.init.a0 = {cplx(1, 0), cplx(0, 0)};
  spec.t_max = 400.0;
  spec.dt = 0.01;
  spec.sample_stride = 100;
  const Trajectory traj = integrate_full(spec);
  double p_disc = 0.0;
  for (const cplx& z : traj.samples.back().a) p_disc += std::norm(z);
  CHECK(p_disc == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("reference instance has no bound states") {
  const auto delta =
      delta_analytic_lattice(validate_config(SystemConfig{
          3, {0.0, 0.0, 0.0}, {0.0375, 0.025, 0.05}, {-1, 0, 1}, 1.0}));
  for (const auto& m : eigen_analysis(delta)) {
    CHECK_FALSE(m.bound_state);
    CHECK(m.lambda.real() > 0.0);
  }
}

TEST_CASE("decay rates are non-negative on fuzzed degenerate instances") {
  // with a common frequency the hermitian part of Delta is the (PSD)
  // spectral-correlation Gram matrix, so Re lambda >= 0
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uk(0.01, 0.1), uw(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    SystemConfig c;
    c.n_states = 3;
    const double w = uw(rng);
    c.omega = {w, w, w};
    c.kappa_n = {uk(rng), uk(rng), uk(rng)};
    c.alpha_n = {-2, 0, 3};
    const auto delta = delta_analytic_lattice(validate_config(c));
    for (const auto& m : eigen_analysis(delta))
      CHECK(m.lambda.real() >= -1e-8);
  }
}
