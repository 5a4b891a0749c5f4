#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace triadgraph {

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Needs at least two distinct x values.
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;

  bool accepts(double significance) const noexcept { return p_value >= significance; }
};

/// Pearson goodness-of-fit of `observed` counts against `probabilities`
/// (summing to 1). Cells with zero probability must have zero counts, else
/// the p-value is 0; they do not contribute degrees of freedom.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities);

/// Pearson test of homogeneity for two count vectors over the same cells.
/// Cells empty in both samples are dropped.
ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> first,
                                       std::span<const std::uint64_t> second);

}  // namespace triadgraph
