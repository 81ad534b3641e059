#include "spdc/multiplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spdc/constants.hpp"
#include "spdc/numeric.hpp"

namespace spdc {

void Channel::validate() const {
  if (!(width_nm > 0.0)) throw std::invalid_argument("channel: width <= 0");
  if (!(center_nm > 0.0)) throw std::invalid_argument("channel: center <= 0");
  if (!(extinction_db > 0.0))
    throw std::invalid_argument("channel: extinction must exceed 0 dB");
}

double Channel::transmission(double lambda_nm) const {
  const double pass = std::pow(10.0, -insertion_loss_db / 10.0);
  const double floor =
      std::pow(10.0, -(insertion_loss_db + extinction_db) / 10.0);
  const double x = 2.0 * (lambda_nm - center_nm) / width_nm;
  const double x2 = x * x;
  const double x16 = x2 * x2 * x2 * x2 * x2 * x2 * x2 * x2;
  // exp(-x^16) underflows gracefully to 0 for |x| >~ 2.
  return floor + (pass - floor) * std::exp(-x16);
}

void ChannelBank::validate() const {
  if (channels.empty()) throw std::invalid_argument("bank: no channels");
  for (const auto& c : channels) c.validate();
}

namespace multiplex {

std::pair<ChannelBank, ChannelBank> matched_channel_banks(
    double lambda_pump_nm, int count, double spacing_nm, double width_nm,
    double insertion_loss_db, double extinction_db) {
  if (count < 1) throw std::invalid_argument("banks: count < 1");
  if (!(spacing_nm > 0.0)) throw std::invalid_argument("banks: spacing <= 0");
  const double lambda_deg = 2.0 * lambda_pump_nm;
  ChannelBank b, c;
  b.label = "beta";
  c.label = "alpha";
  for (int j = 1; j <= count; ++j) {
    Channel high;  // high-frequency side (short wavelength)
    high.center_nm = lambda_deg - spacing_nm * j;
    high.width_nm = width_nm;
    high.insertion_loss_db = insertion_loss_db;
    high.extinction_db = extinction_db;
    Channel low = high;  // energy-conserving partner
    low.center_nm = 1.0 / (1.0 / lambda_pump_nm - 1.0 / high.center_nm);
    b.channels.push_back(high);
    c.channels.push_back(low);
  }
  b.validate();
  c.validate();
  return {std::move(b), std::move(c)};
}

JsiMatrix jsi_matrix(const BiphotonSpectrum& spectrum, const ChannelBank& bank_b,
                     const ChannelBank& bank_c, double accidental_floor) {
  bank_b.validate();
  bank_c.validate();
  if (accidental_floor < 0.0)
    throw std::invalid_argument("jsi_matrix: negative accidental floor");

  const double omega0 = angular_frequency(spectrum.center_nm() * kNm);
  const double nu_lo = spectrum.nu_at_lambda(spectrum.max_nm());
  const double nu_hi = spectrum.nu_at_lambda(spectrum.min_nm());

  // Every passband (and its energy-conjugate image) must lie inside the
  // spectrum window.
  auto require_covered = [&](const Channel& ch) {
    const double margin = 2.0 * ch.width_nm;
    if (ch.center_nm - margin < spectrum.min_nm() ||
        ch.center_nm + margin > spectrum.max_nm())
      throw std::invalid_argument(
          "jsi_matrix: spectrum window does not cover channel at " +
          std::to_string(ch.center_nm) + " nm");
  };
  for (const auto& ch : bank_b.channels) require_covered(ch);
  for (const auto& ch : bank_c.channels) require_covered(ch);

  const double min_width = [&] {
    double w = bank_b.channels.front().width_nm;
    for (const auto& ch : bank_b.channels) w = std::min(w, ch.width_nm);
    for (const auto& ch : bank_c.channels) w = std::min(w, ch.width_nm);
    return w;
  }();
  // Uniform Simpson grid fine enough to resolve the super-Gaussian skirts
  // (scale width/16); adaptive schemes can step over 0.8 nm passbands in a
  // 300 nm window.
  const double dnu_feature =
      angular_frequency(spectrum.center_nm() * kNm) -
      angular_frequency((spectrum.center_nm() + min_width / 32.0) * kNm);
  const int n = std::min(
      4'000'000, static_cast<int>(std::ceil((nu_hi - nu_lo) /
                                            std::abs(dnu_feature))) + 8);

  auto lambda_signal_nm = [&](double nu) {
    return wavelength_from_omega(omega0 + nu) / kNm;
  };
  auto lambda_idler_nm = [&](double nu) {
    return wavelength_from_omega(omega0 - nu) / kNm;
  };

  const size_t nb = bank_b.channels.size();
  const size_t nc = bank_c.channels.size();
  JsiMatrix m;
  m.linear.assign(nb, std::vector<double>(nc, 0.0));
  for (const auto& ch : bank_b.channels) m.row_centers_nm.push_back(ch.center_nm);
  for (const auto& ch : bank_c.channels) m.col_centers_nm.push_back(ch.center_nm);

  // Channel singles: spectrum seen through one filter alone.
  std::vector<double> singles_b(nb), singles_c(nc);
  for (size_t i = 0; i < nb; ++i)
    singles_b[i] = numeric::simpson(
        [&](double nu) {
          return spectrum.intensity_at_nu(nu) *
                 bank_b.channels[i].transmission(lambda_signal_nm(nu));
        },
        nu_lo, nu_hi, n);
  for (size_t j = 0; j < nc; ++j)
    singles_c[j] = numeric::simpson(
        [&](double nu) {
          return spectrum.intensity_at_nu(nu) *
                 bank_c.channels[j].transmission(lambda_idler_nm(nu));
        },
        nu_lo, nu_hi, n);
  const double sb_max = *std::max_element(singles_b.begin(), singles_b.end());
  const double sc_max = *std::max_element(singles_c.begin(), singles_c.end());

  double true_max = 0.0;
  for (size_t i = 0; i < nb; ++i) {
    for (size_t j = 0; j < nc; ++j) {
      m.linear[i][j] = numeric::simpson(
          [&](double nu) {
            return spectrum.intensity_at_nu(nu) *
                   bank_b.channels[i].transmission(lambda_signal_nm(nu)) *
                   bank_c.channels[j].transmission(lambda_idler_nm(nu));
          },
          nu_lo, nu_hi, n);
      true_max = std::max(true_max, m.linear[i][j]);
    }
  }

  // Accidental floor: largest contribution is accidental_floor * peak, at
  // the channel pair with the largest singles product.
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nc; ++j)
      m.linear[i][j] += accidental_floor * true_max *
                        (singles_b[i] / sb_max) * (singles_c[j] / sc_max);

  m.max_entry = 0.0;
  for (const auto& row : m.linear)
    for (double v : row) m.max_entry = std::max(m.max_entry, v);
  return m;
}

double JsiMatrix::db_relative(size_t i, size_t j) const {
  return 10.0 * std::log10(linear[i][j] / max_entry);
}

RejectionRatios rejection_ratios(const JsiMatrix& m) {
  const size_t n = m.linear.size();
  if (n == 0 || m.linear.front().size() != n)
    throw std::invalid_argument("rejection_ratios: matrix must be square");
  RejectionRatios r{1e300, 1e300};
  bool has_adjacent = false, has_non_adjacent = false;
  for (size_t i = 0; i < n; ++i) {
    const double diag = m.linear[i][i];
    if (!(diag > 0.0))
      throw std::invalid_argument("rejection_ratios: zero diagonal entry");
    double adj = 0.0, non = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = std::max(m.linear[i][j], m.linear[j][i]);
      if (j + 1 == i || j == i + 1) adj = std::max(adj, v);
      else non = std::max(non, v);
    }
    if (adj > 0.0) {
      r.adjacent_db = std::min(r.adjacent_db, 10.0 * std::log10(diag / adj));
      has_adjacent = true;
    }
    if (non > 0.0) {
      r.non_adjacent_db =
          std::min(r.non_adjacent_db, 10.0 * std::log10(diag / non));
      has_non_adjacent = true;
    }
  }
  if (!has_adjacent) r.adjacent_db = std::numeric_limits<double>::infinity();
  if (!has_non_adjacent)
    r.non_adjacent_db = std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace multiplex
}  // namespace spdc
