#include "triadgraph/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "triadgraph/errors.hpp"
#include "triadgraph/stats.hpp"

namespace triadgraph {

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Sub:
      return "Sub";
    case Regime::Critical:
      return "Critical";
    case Regime::Super:
      return "Super";
  }
  return "?";
}

std::string_view to_string(TriplesLaw law) noexcept {
  switch (law) {
    case TriplesLaw::Linear:
      return "t";
    case TriplesLaw::LinearLog:
      return "t ln t";
    case TriplesLaw::Power:
      return "t^{2A}";
  }
  return "?";
}

std::string_view to_string(GlobalClusteringLaw law) noexcept {
  switch (law) {
    case GlobalClusteringLaw::Constant:
      return "1";
    case GlobalClusteringLaw::InverseLog:
      return "1/ln t";
    case GlobalClusteringLaw::Power:
      return "t^{1-2A}";
  }
  return "?";
}

namespace {

double denominator(double alpha, double delta) noexcept {
  return (alpha + 1.0) * (2.0 * (alpha + 1.0) + delta);
}

}  // namespace

double compute_A(double alpha, double delta) noexcept {
  return ((alpha + 1.0) * (alpha + 1.0) + delta * alpha) / denominator(alpha, delta);
}

double compute_B(double alpha, double delta) noexcept {
  return delta * (1.0 + alpha) * (1.0 - alpha) / denominator(alpha, delta);
}

double compute_A_l(double alpha, double delta, std::uint64_t l) noexcept {
  return compute_A(alpha, delta) + compute_B(alpha, delta) / static_cast<double>(l);
}

Regime classify_regime(double alpha, double delta) noexcept {
  if (delta == 0.0 || alpha == 1.0) return Regime::Critical;
  return delta > 0.0 ? Regime::Sub : Regime::Super;
}

TheoryTable degree_law(double alpha, double delta, std::size_t l_max) {
  if (l_max < 2) throw ParameterError("degree law needs l_max >= 2");
  TheoryTable table;
  table.alpha = alpha;
  table.delta = delta;
  table.A = compute_A(alpha, delta);
  table.B = compute_B(alpha, delta);
  table.gamma = 1.0 + 1.0 / table.A;
  table.regime = classify_regime(alpha, delta);
  table.p.resize(l_max);

  const double a1 = table.A_l(1);
  const double a2 = table.A_l(2);
  table.p[0] = (1.0 - alpha) / (a1 + 1.0);
  table.p[1] = (a1 + alpha) / ((a1 + 1.0) * (2.0 * a2 + 1.0));
  double prev_weight = 2.0 * a2;  // (l-1) A_{l-1}
  for (std::size_t l = 3; l <= l_max; ++l) {
    const double weight = static_cast<double>(l) * table.A + table.B;  // l A_l
    table.p[l - 1] = table.p[l - 2] * prev_weight / (weight + 1.0);
    prev_weight = weight;
  }
  return table;
}

std::vector<double> degree_law_closed_form(double alpha, double delta,
                                           std::size_t l_max) {
  if (l_max < 2) throw ParameterError("degree law needs l_max >= 2");
  const long double a = compute_A(alpha, delta);
  const long double b = compute_B(alpha, delta);
  const long double a1 = a + b;
  std::vector<double> p(l_max);
  p[0] = static_cast<double>((1.0L - alpha) / (a1 + 1.0L));
  long double product = 1.0L + 1.0L / a1;
  for (std::size_t l = 2; l <= l_max; ++l) {
    const long double weight = static_cast<long double>(l) * a + b;
    product *= 1.0L + 1.0L / weight;
    p[l - 1] = static_cast<double>((a1 + alpha) / (a1 * weight * product));
  }
  return p;
}

double tail_exponent_check(const TheoryTable& table, std::size_t l_lo,
                           std::size_t l_hi) {
  if (l_lo < 2 || l_lo >= l_hi || l_hi > table.l_max()) {
    throw ParameterError("tail fit range must satisfy 2 <= l_lo < l_hi <= l_max");
  }
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(l_hi - l_lo + 1);
  y.reserve(l_hi - l_lo + 1);
  for (std::size_t l = l_lo; l <= l_hi; ++l) {
    const double p = table.p_at(l);
    if (!(p > 0.0)) throw ParameterError("p(l) vanishes inside the tail fit range");
    x.push_back(std::log(static_cast<double>(l)));
    y.push_back(std::log(p));
  }
  return ols_fit(x, y).slope;
}

TailBounds tail_bounds(const TheoryTable& table) {
  const std::size_t l_max = table.l_max();
  double c = 0.0;
  for (std::size_t l = std::max<std::size_t>(2, l_max / 10); l <= l_max; ++l) {
    c = std::max(c, table.p_at(l) * std::pow(static_cast<double>(l), table.gamma));
  }
  const double big_l = static_cast<double>(l_max);
  return TailBounds{
      c,
      c * std::pow(big_l, 1.0 - table.gamma) / (table.gamma - 1.0),
      c * std::pow(big_l, 2.0 - table.gamma) / (table.gamma - 2.0),
  };
}

ScalingPrediction predicted_scalings(double alpha, double delta) noexcept {
  const Regime regime = classify_regime(alpha, delta);
  switch (regime) {
    case Regime::Sub:
      return {regime, TriplesLaw::Linear, GlobalClusteringLaw::Constant,
              std::nullopt, std::nullopt};
    case Regime::Critical:
      return {regime, TriplesLaw::LinearLog, GlobalClusteringLaw::InverseLog,
              std::nullopt, std::nullopt};
    case Regime::Super:
      break;
  }
  const double a = compute_A(alpha, delta);
  return {regime, TriplesLaw::Power, GlobalClusteringLaw::Power, 2.0 * a,
          1.0 - 2.0 * a};
}

}  // namespace triadgraph
