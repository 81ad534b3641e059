#include "spdc/dispersion.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spdc/constants.hpp"

namespace spdc {

namespace {

// n^2 and its first two wavelength derivatives (lambda in um).
double sellmeier_n2(const SellmeierCoefficients& c, double lum) {
  const double l2 = lum * lum;
  double v = c.constant + c.lambda2_term * l2;
  for (const auto& [p, q] : c.poles) v += p / (l2 - q);
  return v;
}

double sellmeier_dn2(const SellmeierCoefficients& c, double lum) {
  const double l2 = lum * lum;
  double v = 2.0 * c.lambda2_term * lum;
  for (const auto& [p, q] : c.poles) {
    const double d = l2 - q;
    v += -2.0 * p * lum / (d * d);
  }
  return v;
}

double sellmeier_d2n2(const SellmeierCoefficients& c, double lum) {
  const double l2 = lum * lum;
  double v = 2.0 * c.lambda2_term;
  for (const auto& [p, q] : c.poles) {
    const double d = l2 - q;
    v += p * (8.0 * l2 / (d * d * d) - 2.0 / (d * d));
  }
  return v;
}

}  // namespace

DispersionModel DispersionModel::sellmeier(SellmeierCoefficients coefficients,
                                           double min_nm, double max_nm) {
  if (!(max_nm > min_nm) || !(min_nm > 0.0))
    throw std::invalid_argument("dispersion: bad validity range");
  DispersionModel m;
  m.kind_ = Kind::analytic_sellmeier;
  m.coeff_ = std::move(coefficients);
  m.min_nm_ = min_nm;
  m.max_nm_ = max_nm;
  m.validate_physical();
  return m;
}

DispersionModel DispersionModel::tabulated(std::vector<double> wavelengths_nm,
                                           std::vector<double> indices) {
  if (wavelengths_nm.size() < 4)
    throw std::invalid_argument(
        "dispersion: tabulated model needs at least 4 points");
  DispersionModel m;
  m.kind_ = Kind::tabulated;
  m.min_nm_ = wavelengths_nm.front();
  m.max_nm_ = wavelengths_nm.back();
  m.spline_ = std::make_shared<numeric::CubicSpline>(std::move(wavelengths_nm),
                                                     std::move(indices));
  m.validate_physical();
  return m;
}

DispersionModel DispersionModel::from_table_text(const std::string& text,
                                                 const std::string& origin) {
  std::vector<double> lams, ns;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double lam, n;
    if (!(ls >> lam)) continue;  // blank or comment-only line
    if (!(ls >> n))
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": expected \"wavelength_nm n_eff\"");
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": trailing field '" + extra + "'");
    if (!lams.empty() && lam == lams.back())
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": duplicate wavelength");
    if (!lams.empty() && lam < lams.back())
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": wavelengths must be strictly increasing");
    lams.push_back(lam);
    ns.push_back(n);
  }
  return tabulated(std::move(lams), std::move(ns));
}

DispersionModel DispersionModel::from_table_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("dispersion: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_table_text(ss.str(), path);
}

DispersionModel DispersionModel::bulk_lithium_niobate_e() {
  // Jundt (1997) at 24.5 C, lambda in um:
  // n^2 = 5.35583 + 0.100473/(L^2 - 0.20692^2)
  //     + 100.2053/(L^2 - 11.34927^2) - 0.015334 L^2
  SellmeierCoefficients c;
  c.constant = 5.35583;
  c.poles = {{0.100473, 0.20692 * 0.20692}, {100.2053, 11.34927 * 11.34927}};
  c.lambda2_term = -0.015334;
  return sellmeier(std::move(c), 400.0, 4500.0);
}

void DispersionModel::validate_physical() const {
  const int samples = 64;
  for (int i = 0; i <= samples; ++i) {
    const double lam = min_nm_ + (max_nm_ - min_nm_) * i / samples;
    const double n = index_unchecked(lam);
    if (!(n > 1.0) || !std::isfinite(n))
      throw std::invalid_argument(
          "dispersion: model gives n <= 1 at " + std::to_string(lam) + " nm");
  }
}

void DispersionModel::check_range(double lambda_nm) const {
  if (lambda_nm < min_nm_ || lambda_nm > max_nm_)
    throw std::out_of_range("dispersion: " + std::to_string(lambda_nm) +
                            " nm outside valid range [" +
                            std::to_string(min_nm_) + ", " +
                            std::to_string(max_nm_) + "] nm");
}

void DispersionModel::check_stencil_range(double lambda_nm) const {
  // The omega stencil reaches omega*(1 +/- 2e-4), i.e. lambda/(1 +/- 2e-4).
  const double margin = 2.5e-4;
  if (lambda_nm / (1.0 - margin) > max_nm_ ||
      lambda_nm / (1.0 + margin) < min_nm_)
    throw std::out_of_range(
        "dispersion: derivative stencil leaves the valid range at " +
        std::to_string(lambda_nm) + " nm");
}

double DispersionModel::index_unchecked(double lambda_nm) const {
  if (kind_ == Kind::analytic_sellmeier)
    return std::sqrt(sellmeier_n2(coeff_, lambda_nm * 1e-3));
  return (*spline_)(lambda_nm);
}

double DispersionModel::index(double lambda_nm) const {
  check_range(lambda_nm);
  return index_unchecked(lambda_nm);
}

double DispersionModel::wavevector(double lambda_nm) const {
  check_range(lambda_nm);
  return 2.0 * kPi * index_unchecked(lambda_nm) / (lambda_nm * kNm);
}

double DispersionModel::group_velocity(double lambda_nm) const {
  check_range(lambda_nm);
  check_stencil_range(lambda_nm);
  const double omega0 = angular_frequency(lambda_nm * kNm);
  auto k = [this](double omega) {
    const double lam_nm = wavelength_from_omega(omega) / kNm;
    return index_unchecked(lam_nm) * omega / kSpeedOfLight;
  };
  const double dk =
      numeric::derivative5(k, omega0, 1e-4 * omega0);
  return 1.0 / dk;
}

double DispersionModel::gvd(double lambda_nm) const {
  check_range(lambda_nm);
  check_stencil_range(lambda_nm);
  const double omega0 = angular_frequency(lambda_nm * kNm);
  auto k = [this](double omega) {
    const double lam_nm = wavelength_from_omega(omega) / kNm;
    return index_unchecked(lam_nm) * omega / kSpeedOfLight;
  };
  const double d2k =
      numeric::second_derivative5(k, omega0, 1e-4 * omega0);
  return d2k / kFs2PerMm;
}

double DispersionModel::find_zero_gvd(double lo_nm, double hi_nm) const {
  return numeric::bisect([this](double lam) { return gvd(lam); }, lo_nm,
                         hi_nm, 0.1);
}

double DispersionModel::group_velocity_closed(double lambda_nm) const {
  if (kind_ != Kind::analytic_sellmeier)
    throw std::logic_error("closed-form derivatives need an analytic model");
  check_range(lambda_nm);
  const double lum = lambda_nm * 1e-3;
  const double n = std::sqrt(sellmeier_n2(coeff_, lum));
  const double dn_dlum = sellmeier_dn2(coeff_, lum) / (2.0 * n);
  const double group_index = n - lum * dn_dlum;  // n - L dn/dL
  return kSpeedOfLight / group_index;
}

double DispersionModel::gvd_closed(double lambda_nm) const {
  if (kind_ != Kind::analytic_sellmeier)
    throw std::logic_error("closed-form derivatives need an analytic model");
  check_range(lambda_nm);
  const double lum = lambda_nm * 1e-3;
  const double n = std::sqrt(sellmeier_n2(coeff_, lum));
  const double dn = sellmeier_dn2(coeff_, lum) / (2.0 * n);        // per um
  const double d2n =
      (sellmeier_d2n2(coeff_, lum) - 2.0 * dn * dn) / (2.0 * n);   // per um^2
  // GVD = lambda^3 / (2 pi c^2) * d2n/dlambda2, all in SI.
  const double lam_m = lambda_nm * kNm;
  const double d2n_si = d2n / (kUm * kUm);
  const double gvd_si = lam_m * lam_m * lam_m * d2n_si /
                        (2.0 * kPi * kSpeedOfLight * kSpeedOfLight);
  return gvd_si / kFs2PerMm;
}

}  // namespace spdc
