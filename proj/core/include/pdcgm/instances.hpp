#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdcgm/tssp.hpp"

namespace pdcgm {

/// Built-in benchmark instances transcribed from the literature, keyed by
/// their customary names. Currently provides "lands", the classic
/// three-scenario electricity investment planning problem, in equality form
/// with explicit slack columns. Returns nullopt for unknown names.
std::optional<tssp::StochasticInstance> builtin_tssp(const std::string& name);

std::vector<std::string> builtin_tssp_names();

}  // namespace pdcgm
