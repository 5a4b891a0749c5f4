#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace triadgraph {

/// How the triangle step is realised.
///  - EdgeChoice: with probability alpha join both ends of a uniform edge,
///    otherwise one vertex by affine preferential attachment.
///  - TwoStage (delta = 0 only): join a vertex drawn proportionally to degree,
///    then with probability alpha also one of its neighbours.
enum class Mode { EdgeChoice, TwoStage };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

struct ModelParams {
  double alpha = 0.0;
  double delta = 0.0;
  Mode mode = Mode::EdgeChoice;
  std::uint64_t seed = 0;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws ParameterError unless 0 <= alpha <= 1, delta > -1, and TwoStage is
/// only combined with delta == 0. The message names the offending field.
void validate(const ModelParams& params);

}  // namespace triadgraph
