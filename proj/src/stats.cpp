#include "triadgraph/stats.hpp"

#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

#include "triadgraph/errors.hpp"

namespace triadgraph {

LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("least squares needs two equally sized samples of size >= 2");
  }
  const auto n = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ParameterError("least squares needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

double upper_tail(double statistic, double dof) {
  if (dof <= 0.0) return statistic > 0.0 ? 0.0 : 1.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw ParameterError("chi-square: counts and probabilities differ in size");
  }
  double total = 0.0;
  for (auto c : observed) total += static_cast<double>(c);
  ChiSquareResult result;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = probabilities[i] * total;
    if (probabilities[i] <= 0.0) {
      if (observed[i] != 0) return {std::numeric_limits<double>::infinity(), 0.0, 0.0};
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    result.statistic += diff * diff / expected;
    ++cells;
  }
  result.dof = cells - 1;
  result.p_value = upper_tail(result.statistic, result.dof);
  return result;
}

ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> first,
                                       std::span<const std::uint64_t> second) {
  if (first.size() != second.size()) {
    throw ParameterError("chi-square: samples have different cell counts");
  }
  double n1 = 0.0;
  double n2 = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    n1 += static_cast<double>(first[i]);
    n2 += static_cast<double>(second[i]);
  }
  if (n1 == 0.0 || n2 == 0.0) throw ParameterError("chi-square: empty sample");
  const double n = n1 + n2;
  ChiSquareResult result;
  int cells = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double column = static_cast<double>(first[i] + second[i]);
    if (column == 0.0) continue;
    const double e1 = n1 * column / n;
    const double e2 = n2 * column / n;
    const double d1 = static_cast<double>(first[i]) - e1;
    const double d2 = static_cast<double>(second[i]) - e2;
    result.statistic += d1 * d1 / e1 + d2 * d2 / e2;
    ++cells;
  }
  result.dof = cells - 1;
  result.p_value = upper_tail(result.statistic, result.dof);
  return result;
}

}  // namespace triadgraph
