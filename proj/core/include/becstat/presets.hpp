#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "becstat/three_mode.hpp"
#include "becstat/two_mode.hpp"

namespace becstat::presets {

enum class Model { TwoMode, ThreeMode, ThreeModeNonintegrable };

std::string to_string(Model model);
std::optional<Model> parse_model(std::string_view text);

// One published coupling set. The canonical name is "<table>.<symbol>" with
// the original glyph ("II.♦"); the alias spells the glyph in ASCII ("II.fdia")
// so both forms work on the command line.
struct Preset {
  Model model;
  std::string name;
  std::string alias;
  std::variant<two_mode::TwoModeCouplings, three_mode::ThreeModeCouplings> couplings;
};

const std::vector<Preset>& all_presets();

// Looks up by canonical name or alias; nullptr when unknown.
const Preset* find_preset(std::string_view name);

// All accepted spellings, for configuration error messages.
std::vector<std::string> preset_names();

}  // namespace becstat::presets
