#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spdc/numeric.hpp"

namespace spdc {

/// Sellmeier form n^2(L) = c0 + sum_i p_i / (L^2 - q_i) + r * L^2 with the
/// wavelength L in micrometres. Terms of the common B*L^2/(L^2 - C) family
/// fold into (c0 + B, p = B*C).
struct SellmeierCoefficients {
  double constant = 0.0;
  std::vector<std::pair<double, double>> poles;  // (p_i, q_i), q_i in um^2
  double lambda2_term = 0.0;                     // r, um^-2
};

/// Refractive-index model for one guided (or bulk) mode: either an analytic
/// Sellmeier expansion or a tabulated effective-index curve interpolated by
/// a natural cubic spline. Immutable after construction; all evaluation is
/// const and thread-safe.
///
/// Wavelength arguments are in nm. Evaluation outside the valid range
/// throws std::out_of_range — never extrapolates.
class DispersionModel {
 public:
  enum class Kind { analytic_sellmeier, tabulated };

  static DispersionModel sellmeier(SellmeierCoefficients coefficients,
                                   double min_nm, double max_nm);

  /// Strictly increasing wavelength grid (nm) with effective indices;
  /// at least 4 points. Valid range = [grid.front(), grid.back()].
  static DispersionModel tabulated(std::vector<double> wavelengths_nm,
                                   std::vector<double> indices);

  /// Tabulated-index file: one "wavelength_nm n_eff" record per line,
  /// '#' starts a comment. Rejects duplicate and non-monotone rows with a
  /// line-numbered error.
  static DispersionModel from_table_file(const std::string& path);
  static DispersionModel from_table_text(const std::string& text,
                                         const std::string& origin = "table");

  /// Built-in bulk model: extraordinary index of congruent lithium niobate
  /// at room temperature (Jundt, Opt. Lett. 22, 1553 (1997), 24.5 C).
  static DispersionModel bulk_lithium_niobate_e();

  Kind kind() const { return kind_; }
  double min_wavelength_nm() const { return min_nm_; }
  double max_wavelength_nm() const { return max_nm_; }

  /// Refractive index n(lambda).
  double index(double lambda_nm) const;

  /// k = 2 pi n / lambda in rad/m.
  double wavevector(double lambda_nm) const;

  /// Group velocity d omega / d k in m/s, via 5-point central differences
  /// in omega (step 1e-4 of the local omega).
  double group_velocity(double lambda_nm) const;

  /// Group-velocity dispersion d^2 k / d omega^2 in fs^2/mm, same stencil.
  double gvd(double lambda_nm) const;

  /// Bisection root of gvd(lambda) over [lo, hi] to 0.1 nm. Requires a sign
  /// change over the bracket.
  double find_zero_gvd(double lo_nm, double hi_nm) const;

  // Closed-form counterparts, defined for analytic models only. Used as
  // independent checks of the finite-difference path.
  double group_velocity_closed(double lambda_nm) const;
  double gvd_closed(double lambda_nm) const;

 private:
  DispersionModel() = default;

  void check_range(double lambda_nm) const;
  void check_stencil_range(double lambda_nm) const;
  void validate_physical() const;

  double index_unchecked(double lambda_nm) const;

  Kind kind_ = Kind::analytic_sellmeier;
  double min_nm_ = 0.0, max_nm_ = 0.0;
  SellmeierCoefficients coeff_;
  std::shared_ptr<const numeric::CubicSpline> spline_;
};

}  // namespace spdc
