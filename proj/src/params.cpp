#include "triadgraph/params.hpp"

#include <cmath>

#include <fmt/format.h>

#include "triadgraph/errors.hpp"

namespace triadgraph {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::TwoStage ? "TwoStage" : "EdgeChoice";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "EdgeChoice") return Mode::EdgeChoice;
  if (text == "TwoStage") return Mode::TwoStage;
  return std::nullopt;
}

void validate(const ModelParams& params) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
    throw ParameterError(fmt::format("alpha must lie in [0, 1], got {}", params.alpha));
  }
  if (!(params.delta > -1.0) || !std::isfinite(params.delta)) {
    throw ParameterError(fmt::format("delta must be finite and > -1, got {}", params.delta));
  }
  if (params.mode == Mode::TwoStage && params.delta != 0.0) {
    throw ParameterError(
        fmt::format("mode TwoStage requires delta = 0, got delta = {}", params.delta));
  }
}

}  // namespace triadgraph
