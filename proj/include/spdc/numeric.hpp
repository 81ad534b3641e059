#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace spdc::numeric {

/// Natural cubic spline through strictly increasing knots.
/// Reproduces knot values exactly; evaluation outside [x.front(), x.back()]
/// throws (interpolation only, never extrapolation).
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

/// Plain bisection to |hi - lo| <= xtol. Requires f(lo) and f(hi) of
/// opposite sign; throws std::invalid_argument otherwise.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol);

// 5-point central first/second derivatives with step h.
double derivative5(const std::function<double(double)>& f, double x, double h);
double second_derivative5(const std::function<double(double)>& f, double x,
                          double h);

/// Adaptive Gauss-Kronrod integration of f over [a, b] to the given
/// relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol);

/// Composite Simpson on a uniform grid with n intervals (n rounded up to
/// even). Used where the integrand has narrow features that adaptive
/// schemes could step over.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n);

/// sin(x)/x with the removable singularity filled in (sinc(0) = 1).
double sinc(double x);

struct LinearFit {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXd covariance;  // (A^T W A)^-1
};

/// Weighted linear least squares: minimizes sum_i w_i (y_i - A_i . beta)^2.
LinearFit weighted_least_squares(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& weights);

struct CurveFit {
  Eigen::VectorXd parameters;
  Eigen::MatrixXd covariance;
  bool converged = false;
  int iterations = 0;
};

/// Levenberg-Marquardt with a forward-difference Jacobian. Weights are
/// 1/sigma^2; the covariance is (J^T W J)^-1 at the optimum.
CurveFit fit_curve(
    const std::function<double(double, const Eigen::VectorXd&)>& model,
    const std::vector<double>& x, const std::vector<double>& y,
    const std::vector<double>& sigma, Eigen::VectorXd initial,
    int max_iterations = 200, double tol = 1e-12);

}  // namespace spdc::numeric
