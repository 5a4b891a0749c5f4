#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace triadgraph {

/// Power-law regime, keyed by the sign of A - 1/2.
enum class Regime { Sub, Critical, Super };

std::string_view to_string(Regime regime) noexcept;

/// A = [(a+1)^2 + d a] / ((a+1)[2(a+1) + d]).
double compute_A(double alpha, double delta) noexcept;

/// B = d (1+a)(1-a) / ((a+1)[2(a+1) + d]); l * A_l = l * A + B.
double compute_B(double alpha, double delta) noexcept;

/// A_l = A + B / l, for l >= 1.
double compute_A_l(double alpha, double delta, std::uint64_t l) noexcept;

/// Sub iff delta > 0 and alpha < 1; Critical iff delta == 0 or alpha == 1;
/// Super otherwise. Decided on the parameters themselves, never on a rounded A.
Regime classify_regime(double alpha, double delta) noexcept;

/// Limiting degree law and the constants behind it.
struct TheoryTable {
  double alpha = 0.0;
  double delta = 0.0;
  double A = 0.0;
  double B = 0.0;
  double gamma = 0.0;  // 1 + 1/A
  Regime regime = Regime::Critical;
  std::vector<double> p;  // p[l - 1] = p(l), l = 1..l_max

  std::size_t l_max() const noexcept { return p.size(); }
  double p_at(std::size_t l) const { return p.at(l - 1); }
  double A_l(std::uint64_t l) const noexcept { return A + B / static_cast<double>(l); }
};

inline constexpr std::size_t kDefaultLMax = 10'000;

/// p(1) = (1-a)/(A_1+1), p(2) = (A_1+a)/((A_1+1)(2A_2+1)) and for l >= 3
///   p(l) = p(l-1) (l-1) A_{l-1} / (l A_l + 1).
/// Requires l_max >= 2.
TheoryTable degree_law(double alpha, double delta,
                       std::size_t l_max = kDefaultLMax);

/// Closed form p(l) = (A_1 + a) / (A_1 * l A_l * prod_{j<=l}(1 + 1/(j A_j)))
/// for l >= 2 (p(1) as above), accumulated in long double. Used only to
/// cross-check degree_law.
std::vector<double> degree_law_closed_form(double alpha, double delta,
                                           std::size_t l_max);

/// Least-squares slope of log p(l) against log l over integers
/// l in [l_lo, l_hi]. Requires 2 <= l_lo < l_hi <= table.l_max().
double tail_exponent_check(const TheoryTable& table, std::size_t l_lo,
                           std::size_t l_hi);

/// Truncation bounds for the degree law: with c = max p(l) l^gamma over the
/// last decade of the table,
///   mass  <= c L^{1-gamma} / (gamma - 1)   bounds sum_{l>L} p(l)
///   mean  <= c L^{2-gamma} / (gamma - 2)   bounds sum_{l>L} l p(l)
struct TailBounds {
  double tail_constant;
  double mass;
  double mean;
};

TailBounds tail_bounds(const TheoryTable& table);

/// Scaling classes for E[C_t] (connected triples) and E[C2(t)].
enum class TriplesLaw { Linear, LinearLog, Power };          // t, t ln t, t^{2A}
enum class GlobalClusteringLaw { Constant, InverseLog, Power };  // 1, 1/ln t, t^{1-2A}

std::string_view to_string(TriplesLaw law) noexcept;
std::string_view to_string(GlobalClusteringLaw law) noexcept;

struct ScalingPrediction {
  Regime regime;
  TriplesLaw triples;
  GlobalClusteringLaw c2;
  /// Power-law exponents of t; present only in the Super regime, where the
  /// laws are t^{2A} and t^{1-2A}. Sub has exponents 1 and 0 (no log term).
  std::optional<double> triples_exponent;
  std::optional<double> c2_exponent;
};

ScalingPrediction predicted_scalings(double alpha, double delta) noexcept;

}  // namespace triadgraph
