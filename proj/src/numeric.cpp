#include "spdc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spdc::numeric {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n != y_.size()) throw std::invalid_argument("spline: size mismatch");
  if (n < 3) throw std::invalid_argument("spline: need at least 3 points");
  for (size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("spline: abscissae must be strictly increasing");
  }

  // Natural boundary: second derivative zero at both ends. Tridiagonal
  // system solved by the Thomas algorithm.
  m_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  diag[0] = 1.0;
  diag[n - 1] = 1.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  std::vector<double> c(n, 0.0), d(n, 0.0);
  c[0] = 0.0;
  d[0] = 0.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double lower = x_[i] - x_[i - 1];
    const double denom = diag[i] - lower * c[i - 1];
    c[i] = upper[i] / denom;
    d[i] = (rhs[i] - lower * d[i - 1]) / denom;
  }
  for (size_t i = n - 1; i-- > 1;) m_[i] = d[i] - c[i] * m_[i + 1];
}

double CubicSpline::operator()(double x) const {
  if (x < x_.front() || x > x_.back())
    throw std::out_of_range("spline: evaluation outside tabulated range");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  size_t i = (it == x_.begin()) ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol) {
  if (!(hi > lo)) throw std::invalid_argument("bisect: bad bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: no sign change over bracket");
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double derivative5(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12.0 * h);
}

double second_derivative5(const std::function<double(double)>& f, double x,
                          double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
          f(x - 2 * h)) /
         (12.0 * h * h);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double value =
      gauss_kronrod<double, 31>::integrate(f, a, b, 18, rel_tol, &error);
  if (std::abs(value) > 0.0 && error / std::abs(value) > 1e3 * rel_tol)
    throw std::runtime_error("integrate: quadrature failed to converge");
  return value;
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  if (n < 2) n = 2;
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f(a + i * h);
  for (int i = 2; i < n; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double sinc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

LinearFit weighted_least_squares(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& weights) {
  if (design.rows() != y.size() || design.rows() != weights.size())
    throw std::invalid_argument("wls: size mismatch");
  if (design.rows() < design.cols())
    throw std::invalid_argument("wls: underdetermined system");
  const Eigen::MatrixXd wd = weights.asDiagonal() * design;
  const Eigen::MatrixXd normal = design.transpose() * wd;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (!lu.isInvertible())
    throw std::invalid_argument("wls: degenerate design matrix");
  LinearFit fit;
  fit.covariance = lu.inverse();
  fit.coefficients = fit.covariance * (design.transpose() *
                                       (weights.asDiagonal() * y));
  return fit;
}

CurveFit fit_curve(
    const std::function<double(double, const Eigen::VectorXd&)>& model,
    const std::vector<double>& x, const std::vector<double>& y,
    const std::vector<double>& sigma, Eigen::VectorXd initial,
    int max_iterations, double tol) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto p = initial.size();
  if (n != static_cast<Eigen::Index>(y.size()) ||
      n != static_cast<Eigen::Index>(sigma.size()))
    throw std::invalid_argument("fit_curve: size mismatch");
  if (n < p) throw std::invalid_argument("fit_curve: too few samples");
  for (double s : sigma)
    if (!(s > 0.0))
      throw std::invalid_argument("fit_curve: non-positive sample error");

  Eigen::VectorXd params = std::move(initial);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = 1.0 / (sigma[i] * sigma[i]);

  auto chi2 = [&](const Eigen::VectorXd& pv) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = y[i] - model(x[i], pv);
      s += w[i] * r * r;
    }
    return s;
  };

  double lambda = 1e-3;
  double current = chi2(params);
  CurveFit result;
  Eigen::MatrixXd jac(n, p);
  Eigen::VectorXd resid(n);
  for (int iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;
    for (Eigen::Index i = 0; i < n; ++i)
      resid[i] = y[i] - model(x[i], params);
    for (Eigen::Index j = 0; j < p; ++j) {
      const double step = std::max(1e-8, 1e-7 * std::abs(params[j]));
      Eigen::VectorXd pp = params;
      pp[j] += step;
      for (Eigen::Index i = 0; i < n; ++i)
        jac(i, j) = (model(x[i], pp) - (y[i] - resid[i])) / step;
    }
    const Eigen::MatrixXd jtw = jac.transpose() * w.asDiagonal();
    const Eigen::MatrixXd hess = jtw * jac;
    const Eigen::VectorXd grad = jtw * resid;

    bool improved = false;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Eigen::MatrixXd damped = hess;
      damped.diagonal() += lambda * hess.diagonal();
      const Eigen::VectorXd delta = damped.ldlt().solve(grad);
      const Eigen::VectorXd trial = params + delta;
      const double trial_chi2 = chi2(trial);
      if (trial_chi2 <= current) {
        improved = true;
        const double gain = current - trial_chi2;
        params = trial;
        current = trial_chi2;
        lambda = std::max(lambda * 0.3, 1e-12);
        if (gain < tol * (1.0 + current)) {
          result.converged = true;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (result.converged || !improved) {
      result.converged = result.converged || improved == false;
      break;
    }
  }

  // Covariance from the undamped normal matrix at the optimum.
  for (Eigen::Index j = 0; j < p; ++j) {
    const double step = std::max(1e-8, 1e-7 * std::abs(params[j]));
    Eigen::VectorXd pp = params;
    pp[j] += step;
    for (Eigen::Index i = 0; i < n; ++i)
      jac(i, j) = (model(x[i], pp) - model(x[i], params)) / step;
  }
  const Eigen::MatrixXd normal = jac.transpose() * w.asDiagonal() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (lu.isInvertible()) result.covariance = lu.inverse();
  else result.covariance = Eigen::MatrixXd::Zero(p, p);
  result.parameters = params;
  return result;
}

}  // namespace spdc::numeric
