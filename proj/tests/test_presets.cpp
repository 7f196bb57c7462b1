#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <variant>

#include "becstat/presets.hpp"

namespace pr = becstat::presets;
using becstat::two_mode::TwoModeCouplings;
using becstat::three_mode::ThreeModeCouplings;

namespace {

bool same(const TwoModeCouplings& a, const TwoModeCouplings& b) {
  return a.u11 == b.u11 && a.u22 == b.u22 && a.u12 == b.u12 && a.mu1 == b.mu1 &&
         a.mu2 == b.mu2 && a.ej == b.ej;
}

bool same(const ThreeModeCouplings& a, const ThreeModeCouplings& b) {
  return a.uaa == b.uaa && a.ubb == b.ubb && a.ucc == b.ucc && a.uab == b.uab &&
         a.uac == b.uac && a.ubc == b.ubc && a.mua == b.mua && a.mub == b.mub &&
         a.muc == b.muc && a.omega == b.omega;
}

void check_two(const char* name, const TwoModeCouplings& want) {
  const auto* p = pr::find_preset(name);
  REQUIRE_MESSAGE(p != nullptr, name);
  CHECK(p->model == pr::Model::TwoMode);
  REQUIRE(std::holds_alternative<TwoModeCouplings>(p->couplings));
  CHECK_MESSAGE(same(std::get<TwoModeCouplings>(p->couplings), want), name);
}

void check_three(const char* name, const ThreeModeCouplings& want) {
  const auto* p = pr::find_preset(name);
  REQUIRE_MESSAGE(p != nullptr, name);
  CHECK(p->model == pr::Model::ThreeMode);
  REQUIRE(std::holds_alternative<ThreeModeCouplings>(p->couplings));
  CHECK_MESSAGE(same(std::get<ThreeModeCouplings>(p->couplings), want), name);
}

}  // namespace

TEST_CASE("catalog shape: 18 presets, unique names and aliases") {
  const auto& all = pr::all_presets();
  CHECK(all.size() == 18);
  int two = 0, three = 0;
  std::set<std::string> seen;
  for (const auto& p : all) {
    (p.model == pr::Model::TwoMode ? two : three)++;
    CHECK(seen.insert(p.name).second);
    CHECK(seen.insert(p.alias).second);
    CHECK(pr::find_preset(p.name) == &p);
    CHECK(pr::find_preset(p.alias) == &p);
  }
  CHECK(two == 10);
  CHECK(three == 8);
  CHECK(pr::preset_names().size() == 36);
  CHECK(pr::find_preset("IV.star") == nullptr);
  CHECK(pr::find_preset("") == nullptr);
}

TEST_CASE("every published value pinned exactly") {
  check_two("I.ftri", {0.01, 0.01, -0.02, 0.01, -0.01, 100.0});
  check_two("I.fsq", {2.0, 2.0, -4.0, 1.0, -1.0, 1.0});
  check_two("I.dot", {100.0, 100.0, -200.0, 10.0, -10.0, 0.01});

  check_two("II.star", {0.01, 0.003, 0.0, 0.0, 0.0, 100.0});
  check_two("II.dot", {2.0, 0.7, 0.0, 0.0, 0.0, 1.0});
  check_two("II.cross", {100.0, 88.0, 0.0, 0.0, 0.0, 0.01});
  check_two("II.plus", {3.1, -0.14, 0.001, 15.0, -2.0, 0.5});
  check_two("II.ftri", {-0.2, 0.4, 10.0, 0.0, 4.67, 10.0});
  check_two("II.fsq", {66.0, 28.0, 0.3, 3.14, 143.0, 0.24});
  check_two("II.fdia", {0.34, 3.45, 0.0, 0.12, 0.11, 15.0});

  check_three("III.star", {0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0, 0.0, 0.0, 100.0});
  check_three("III.dot", {1.618, 1.618, 1.618, 1.618, 1.618, 1.618, 1.618, 1.618, 1.618, 1.618});
  check_three("III.cross", {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.001});
  check_three("III.plus", {1.0, -3.0, 15.0, -1.0, 0.5, 15.0, 1.0, -1.0, -5.0, 10.0});
  check_three("III.ftri", {0.018, -0.82, 9.55, 0.23, 0.0, 15.0, 0.4447, -0.61, 0.8939, -8.0});
  check_three("III.fsq", {2.0, -19.95, 0.0, 10.0, 0.01, -3.0, 0.0, -5.0, 1.3, 0.1});
  check_three("III.dtri", {0.0, -1.0, 12.0, 40.0, 30.0, -2.0, -15.0, -28.0, -4.0, 127.0});
  check_three("III.fdia", {22.145, 4.0, 0.3, -2.29, -36.9, 0.91, -2.0, 5.0, 10.34, 13.7});
}

TEST_CASE("glyph spellings resolve to the same rows as the aliases") {
  CHECK(pr::find_preset("I.▲") == pr::find_preset("I.ftri"));
  CHECK(pr::find_preset("II.*") == pr::find_preset("II.star"));
  CHECK(pr::find_preset("II.×") == pr::find_preset("II.cross"));
  CHECK(pr::find_preset("II.♦") == pr::find_preset("II.fdia"));
  CHECK(pr::find_preset("III.•") == pr::find_preset("III.dot"));
  CHECK(pr::find_preset("III.▼") == pr::find_preset("III.dtri"));
}

TEST_CASE("model tags parse and print") {
  using pr::Model;
  CHECK(pr::to_string(Model::TwoMode) == "two_mode");
  CHECK(pr::to_string(Model::ThreeMode) == "three_mode");
  CHECK(pr::to_string(Model::ThreeModeNonintegrable) == "three_mode_nonintegrable");
  CHECK(pr::parse_model("two_mode") == Model::TwoMode);
  CHECK(pr::parse_model("three_mode") == Model::ThreeMode);
  CHECK(pr::parse_model("three_mode_nonintegrable") == Model::ThreeModeNonintegrable);
  CHECK(pr::parse_model("nonintegrable") == Model::ThreeModeNonintegrable);
  CHECK_FALSE(pr::parse_model("four_mode").has_value());
}
