#include "becstat/presets.hpp"

namespace becstat::presets {

namespace {

using two_mode::TwoModeCouplings;
using three_mode::ThreeModeCouplings;

std::vector<Preset> make_presets() {
  std::vector<Preset> p;
  const auto two = [&p](std::string name, std::string alias, TwoModeCouplings c) {
    p.push_back({Model::TwoMode, std::move(name), std::move(alias), c});
  };
  const auto three = [&p](std::string name, std::string alias, ThreeModeCouplings c) {
    p.push_back({Model::ThreeMode, std::move(name), std::move(alias), c});
  };

  // Density-of-states couplings (one row per dynamical regime).
  two("I.▲", "I.ftri", {.u11 = 0.01, .u22 = 0.01, .u12 = -0.02, .mu1 = 0.01, .mu2 = -0.01, .ej = 100.0});
  two("I.■", "I.fsq", {.u11 = 2.0, .u22 = 2.0, .u12 = -4.0, .mu1 = 1.0, .mu2 = -1.0, .ej = 1.0});
  two("I.•", "I.dot", {.u11 = 100.0, .u22 = 100.0, .u12 = -200.0, .mu1 = 10.0, .mu2 = -10.0, .ej = 0.01});

  // Two-mode spacing-statistics couplings.
  two("II.*", "II.star", {.u11 = 0.01, .u22 = 0.003, .u12 = 0.0, .mu1 = 0.0, .mu2 = 0.0, .ej = 100.0});
  two("II.•", "II.dot", {.u11 = 2.0, .u22 = 0.7, .u12 = 0.0, .mu1 = 0.0, .mu2 = 0.0, .ej = 1.0});
  two("II.×", "II.cross", {.u11 = 100.0, .u22 = 88.0, .u12 = 0.0, .mu1 = 0.0, .mu2 = 0.0, .ej = 0.01});
  two("II.+", "II.plus", {.u11 = 3.1, .u22 = -0.14, .u12 = 0.001, .mu1 = 15.0, .mu2 = -2.0, .ej = 0.5});
  two("II.▲", "II.ftri", {.u11 = -0.2, .u22 = 0.4, .u12 = 10.0, .mu1 = 0.0, .mu2 = 4.67, .ej = 10.0});
  two("II.■", "II.fsq", {.u11 = 66.0, .u22 = 28.0, .u12 = 0.3, .mu1 = 3.14, .mu2 = 143.0, .ej = 0.24});
  two("II.♦", "II.fdia", {.u11 = 0.34, .u22 = 3.45, .u12 = 0.0, .mu1 = 0.12, .mu2 = 0.11, .ej = 15.0});

  // Atomic-molecular couplings (shared by the integrable and broken variants).
  three("III.*", "III.star",
        {.uaa = 0.1, .ubb = 0.1, .ucc = 0.1, .uab = 0.1, .uac = 0.1, .ubc = 0.1,
         .mua = 0.0, .mub = 0.0, .muc = 0.0, .omega = 100.0});
  three("III.•", "III.dot",
        {.uaa = 1.618, .ubb = 1.618, .ucc = 1.618, .uab = 1.618, .uac = 1.618, .ubc = 1.618,
         .mua = 1.618, .mub = 1.618, .muc = 1.618, .omega = 1.618});
  three("III.×", "III.cross",
        {.uaa = 1.0, .ubb = 1.0, .ucc = 1.0, .uab = 1.0, .uac = 1.0, .ubc = 1.0,
         .mua = 0.0, .mub = 0.0, .muc = 0.0, .omega = 0.001});
  three("III.+", "III.plus",
        {.uaa = 1.0, .ubb = -3.0, .ucc = 15.0, .uab = -1.0, .uac = 0.5, .ubc = 15.0,
         .mua = 1.0, .mub = -1.0, .muc = -5.0, .omega = 10.0});
  three("III.▲", "III.ftri",
        {.uaa = 0.018, .ubb = -0.82, .ucc = 9.55, .uab = 0.23, .uac = 0.0, .ubc = 15.0,
         .mua = 0.4447, .mub = -0.61, .muc = 0.8939, .omega = -8.0});
  three("III.■", "III.fsq",
        {.uaa = 2.0, .ubb = -19.95, .ucc = 0.0, .uab = 10.0, .uac = 0.01, .ubc = -3.0,
         .mua = 0.0, .mub = -5.0, .muc = 1.3, .omega = 0.1});
  three("III.▼", "III.dtri",
        {.uaa = 0.0, .ubb = -1.0, .ucc = 12.0, .uab = 40.0, .uac = 30.0, .ubc = -2.0,
         .mua = -15.0, .mub = -28.0, .muc = -4.0, .omega = 127.0});
  three("III.♦", "III.fdia",
        {.uaa = 22.145, .ubb = 4.0, .ucc = 0.3, .uab = -2.29, .uac = -36.9, .ubc = 0.91,
         .mua = -2.0, .mub = 5.0, .muc = 10.34, .omega = 13.7});

  return p;
}

}  // namespace

std::string to_string(Model model) {
  switch (model) {
    case Model::TwoMode: return "two_mode";
    case Model::ThreeMode: return "three_mode";
    case Model::ThreeModeNonintegrable: return "three_mode_nonintegrable";
  }
  return "unknown";
}

std::optional<Model> parse_model(std::string_view text) {
  if (text == "two_mode") return Model::TwoMode;
  if (text == "three_mode") return Model::ThreeMode;
  if (text == "three_mode_nonintegrable" || text == "nonintegrable")
    return Model::ThreeModeNonintegrable;
  return std::nullopt;
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : all_presets())
    if (p.name == name || p.alias == name) return &p;
  return nullptr;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  names.reserve(2 * all_presets().size());
  for (const auto& p : all_presets()) {
    names.push_back(p.name);
    names.push_back(p.alias);
  }
  return names;
}

}  // namespace becstat::presets
