#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spdc/constants.hpp"
#include "spdc/qpm.hpp"

using namespace spdc;

namespace {

DispersionModel flat_model(double n, double lo = 300.0, double hi = 2500.0) {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 10; ++i) {
    xs.push_back(lo + (hi - lo) * i / 10.0);
    ys.push_back(n);
  }
  return DispersionModel::tabulated(xs, ys);
}

// Fourier-coefficient oracle: trapezoid quadrature of the two-level +/-1
// profile g = +1 on [0, D), -1 on [D, 1), |c_m| = |int g e^{-i 2 pi m x}|,
// split at the domain wall so the trapezoid error stays O(h^2).
double fourier_by_quadrature(int m, double duty) {
  const int n = 10000;
  auto piece = [&](double a, double b, double sign) {
    std::complex<double> acc = 0.0;
    const double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) {
      const double x = a + i * h;
      const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
      acc += weight * sign *
             std::exp(std::complex<double>(0.0, -2.0 * kPi * m * x));
    }
    return acc * h;
  };
  return std::abs(piece(0.0, duty, 1.0) + piece(duty, 1.0, -1.0));
}

}  // namespace

TEST_CASE("poling defaults mirror the source design") {
  PolingSpec p;
  CHECK(p.period_um == 4.0);
  CHECK(p.duty_cycle == 0.5);
  CHECK(p.length_mm == 6.0);
  CHECK(p.order == 1);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("poling validation") {
  PolingSpec p;
  p.duty_cycle = 1.0;
  CHECK_THROWS(p.validate());
  p = PolingSpec{};
  p.period_um = -1.0;
  CHECK_THROWS(p.validate());
  p = PolingSpec{};
  p.order = 0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("fourier coefficient: known values") {
  CHECK(qpm::fourier_coefficient(1, 0.5) ==
        doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(qpm::fourier_coefficient(2, 0.5) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("fourier coefficient vs quadrature oracle") {
  for (const auto& [m, d] : std::vector<std::pair<int, double>>{
           {1, 0.3}, {1, 0.5}, {2, 0.25}, {3, 0.4}, {5, 0.7}}) {
    CHECK(qpm::fourier_coefficient(m, d) ==
          doctest::Approx(fourier_by_quadrature(m, d)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("fourier coefficient duty-cycle symmetry for odd m") {
  for (int m : {1, 3, 5, 7}) {
    for (double d : {0.1, 0.22, 0.37, 0.48}) {
      CHECK(std::abs(qpm::fourier_coefficient(m, d) -
                     qpm::fourier_coefficient(m, 1.0 - d)) < 1e-12);
    }
  }
}

TEST_CASE("fourier coefficient argument checks") {
  CHECK_THROWS(qpm::fourier_coefficient(0, 0.5));
  CHECK_THROWS(qpm::fourier_coefficient(1, 0.0));
  CHECK_THROWS(qpm::fourier_coefficient(1, 1.0));
}

TEST_CASE("phase mismatch vanishes for a constructed solution") {
  // n_p - n_s = lambda_p / period makes first-order QPM exact at degeneracy.
  const double lp = 735.76;
  const auto ns = flat_model(1.97);
  const auto np = flat_model(1.97 + lp * 1e-3 / 4.0);
  PolingSpec pol;
  const double dk = qpm::phase_mismatch(np, ns, ns, lp, 2 * lp, 2 * lp, pol);
  CHECK(std::abs(dk) < 1e-6);
}

TEST_CASE("phase mismatch: energy conservation is enforced") {
  const auto m = flat_model(2.0);
  PolingSpec pol;
  CHECK_THROWS(qpm::phase_mismatch(m, m, m, 735.76, 1471.52, 1470.0, pol));
  // mild detuning that still conserves energy is accepted
  const double ls = 1400.0;
  const double li = 1.0 / (1.0 / 735.76 - 1.0 / ls);
  CHECK_NOTHROW(qpm::phase_mismatch(m, m, m, 735.76, ls, li, pol));
}

TEST_CASE("halving the period shifts the mismatch by its reciprocal") {
  const auto m = flat_model(2.1);
  PolingSpec pol;
  const double dk1 = qpm::phase_mismatch(m, m, m, 700.0, 1400.0, 1400.0, pol);
  pol.period_um = 2.0;
  const double dk2 = qpm::phase_mismatch(m, m, m, 700.0, 1400.0, 1400.0, pol);
  CHECK(dk1 - dk2 ==
        doctest::Approx(2.0 * kPi / (4.0 * kUm) * 1.0).epsilon(1e-12));
}

TEST_CASE("mismatch is symmetric under signal/idler exchange") {
  const auto bulk = DispersionModel::bulk_lithium_niobate_e();
  PolingSpec pol;
  const double lp = 735.76;
  const double ls = 1450.0;
  const double li = 1.0 / (1.0 / lp - 1.0 / ls);
  const double a = qpm::phase_mismatch(bulk, bulk, bulk, lp, ls, li, pol);
  const double b = qpm::phase_mismatch(bulk, bulk, bulk, lp, li, ls, pol);
  CHECK(a == b);
}

TEST_CASE("mismatch approaches its second-order expansion near degeneracy") {
  // Around the matched degeneracy the literal mismatch expands as
  // -GVD0 nu^2 (the wavevector sum contributes +GVD0 nu^2); verify the
  // residual drops ~4x per halving of nu.
  const auto bulk = DispersionModel::bulk_lithium_niobate_e();
  const double lp = 735.76;
  PolingSpec pol;
  pol.period_um = qpm::solve_poling_period(bulk, bulk, lp, 1);

  const double gvd0_si = bulk.gvd(2.0 * lp) * kFs2PerMm;
  const double omega0 = angular_frequency(2.0 * lp * kNm) ;
  auto mismatch_at = [&](double nu) {
    const double ls = wavelength_from_omega(omega0 + nu) / kNm;
    const double li = wavelength_from_omega(omega0 - nu) / kNm;
    return qpm::phase_mismatch(bulk, bulk, bulk, lp, ls, li, pol);
  };
  // At 10-40 GHz the quadratic term reproduces the mismatch to better
  // than 1e-4 relative (the quartic correction is ~1e-7 of it there).
  for (double f_ghz : {10.0, 20.0, 40.0}) {
    const double nu = 2.0 * kPi * f_ghz * 1e9;
    CHECK(std::abs(mismatch_at(nu) / (nu * nu) + gvd0_si) <
          1e-4 * std::abs(gvd0_si));
  }
  // The residual itself is o(nu^2): at THz detunings, where it clears the
  // cancellation noise, it drops ~4x per halving of nu.
  std::vector<double> residuals;
  for (double f_thz : {4.0, 2.0, 1.0}) {
    const double nu = 2.0 * kPi * f_thz * 1e12;
    residuals.push_back(
        std::abs((mismatch_at(nu) + gvd0_si * nu * nu) / (nu * nu)));
  }
  CHECK(residuals[1] < 0.35 * residuals[0]);
  CHECK(residuals[2] < 0.35 * residuals[1]);
}

TEST_CASE("solve_poling_period: constructed table gives 4 um") {
  const double lp = 735.76;
  const auto ns = flat_model(1.97);
  const auto np = flat_model(1.97 + lp * 1e-3 / 4.0);
  const double period = qpm::solve_poling_period(np, ns, lp, 1);
  CHECK(period == doctest::Approx(4.0).epsilon(1e-3 / 4.0));

  // inverse consistency
  PolingSpec pol;
  pol.period_um = period;
  CHECK(std::abs(qpm::phase_mismatch(np, ns, ns, lp, 2 * lp, 2 * lp, pol)) <
        1e-6);

  // order 3 triples the period
  CHECK(qpm::solve_poling_period(np, ns, lp, 3) ==
        doctest::Approx(3.0 * period).epsilon(1e-12));
}

TEST_CASE("solve_poling_period requires k_p > 2 k_s") {
  const auto m = flat_model(2.0);
  CHECK_THROWS(qpm::solve_poling_period(m, m, 735.76, 1));
}

TEST_CASE("solve_degenerate_wavelength round trips the design") {
  const double lp = 735.76;
  const auto ns = flat_model(1.97);
  const auto np = flat_model(1.97 + lp * 1e-3 / 4.0);
  PolingSpec pol;  // 4 um, first order
  const double root =
      qpm::solve_degenerate_wavelength(np, ns, pol, 1300.0, 1600.0);
  CHECK(root == doctest::Approx(1471.52).epsilon(0.02 / 1471.52));

  // mutual inverse: the period solved at the root reproduces the input
  const double period = qpm::solve_poling_period(np, ns, root / 2.0, 1);
  CHECK(period == doctest::Approx(pol.period_um).epsilon(1e-6));

  CHECK_THROWS(qpm::solve_degenerate_wavelength(np, ns, pol, 1600.0, 1700.0));
}

TEST_CASE("degenerate root moves monotonically with an index shift") {
  const double lp = 735.76;
  const auto ns = flat_model(1.97);
  PolingSpec pol;
  double previous = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto np = flat_model(1.97 + lp * 1e-3 / 4.0 + 1e-3 * k);
    const double root =
        qpm::solve_degenerate_wavelength(np, ns, pol, 1300.0, 1700.0);
    if (k > 0) CHECK(root > previous + 1.0);
    previous = root;
  }
}

TEST_CASE("solvers are deterministic and bracket independent") {
  const auto bulk = DispersionModel::bulk_lithium_niobate_e();
  PolingSpec pol;
  pol.period_um = qpm::solve_poling_period(bulk, bulk, 735.76, 1);
  const double a =
      qpm::solve_degenerate_wavelength(bulk, bulk, pol, 1300.0, 1700.0);
  const double b =
      qpm::solve_degenerate_wavelength(bulk, bulk, pol, 1400.0, 1550.0);
  CHECK(std::abs(a - b) <= 0.02);
  CHECK(a == qpm::solve_degenerate_wavelength(bulk, bulk, pol, 1300.0, 1700.0));
}
