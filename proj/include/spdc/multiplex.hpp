#pragma once

#include <string>
#include <vector>

#include "spdc/biphoton.hpp"

namespace spdc {

/// One WDM passband. The shape is an order-8 super-Gaussian flat top:
/// transmission is 10^(-IL/10) on the plateau and floors at
/// 10^(-(IL+extinction)/10) far from the center.
struct Channel {
  double center_nm = 0.0;
  double width_nm = 0.8;           // full passband width
  double insertion_loss_db = 3.0;
  double extinction_db = 60.0;

  void validate() const;
  double transmission(double lambda_nm) const;
};

/// Ordered set of passbands on one output arm. label is "beta" for the
/// high-frequency (short wavelength) side, "alpha" for the low-frequency
/// side, matching the channel-pair naming of the source.
struct ChannelBank {
  std::vector<Channel> channels;
  std::string label;

  void validate() const;
};

namespace multiplex {

/// Matched channel-pair banks around the degenerate wavelength: bank B
/// (beta_j) at lambda_deg - spacing*j on the short-wavelength side, bank C
/// (alpha_j) at the energy-conserving partner 1/(1/lambda_p - 1/lambda_B).
/// Returned as {bankB, bankC}; pair j occupies index j-1 in both.
std::pair<ChannelBank, ChannelBank> matched_channel_banks(
    double lambda_pump_nm, int count = 8, double spacing_nm = 8.0,
    double width_nm = 0.8, double insertion_loss_db = 3.0,
    double extinction_db = 60.0);

/// Channelized coincidence matrix. Entry (i, j) integrates
/// P(nu) T_B,i(omega0 + nu) T_C,j(omega0 - nu) over the spectrum window and
/// adds an accidental floor proportional to the product of normalized
/// channel singles. Matched pairs sit on the main diagonal.
struct JsiMatrix {
  std::vector<std::vector<double>> linear;  // row i: bank B, col j: bank C
  std::vector<double> row_centers_nm;
  std::vector<double> col_centers_nm;
  double max_entry = 0.0;

  double db_relative(size_t i, size_t j) const;
};

JsiMatrix jsi_matrix(const BiphotonSpectrum& spectrum, const ChannelBank& bank_b,
                     const ChannelBank& bank_c, double accidental_floor);

struct RejectionRatios {
  double adjacent_db = 0.0;
  double non_adjacent_db = 0.0;
};

/// Worst-case diagonal-to-off-diagonal ratios in dB. Adjacent compares each
/// diagonal entry with its row/column neighbours, non-adjacent with all
/// remaining off-diagonals.
RejectionRatios rejection_ratios(const JsiMatrix& matrix);

}  // namespace multiplex
}  // namespace spdc
