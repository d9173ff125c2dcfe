#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <functional>
#include <sstream>

#include "alcove/errors.hpp"
#include "alcove/multiplicity.hpp"
#include "oracles.hpp"

using namespace alcove;

namespace {

std::vector<Weight> dominant_up_to_level(const RootSystem& rs, int level) {
  std::vector<Weight> out;
  Weight w(rs.rank());
  std::function<void(int, int)> walk = [&](int i, int budget) {
    if (i == rs.rank()) {
      out.push_back(w);
      return;
    }
    for (int a = 0; a * rs.comark(i) <= budget; ++a) {
      w[i] = a;
      walk(i + 1, budget - a * rs.comark(i));
    }
    w[i] = 0;
  };
  walk(0, level);
  return out;
}

}  // namespace

TEST_CASE("highest weight and zero weight multiplicities") {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    CAPTURE(name);
    RootSystem rs(LieType::parse(name));
    CHECK(weight_multiplicity(rs, rs.theta(), rs.theta()) == 1);
    CHECK(weight_multiplicity(rs, rs.theta(), rs.zero()) == rs.rank());
    CHECK(weight_multiplicity(rs, rs.beta(), rs.zero()) ==
          (rs.type().simply_laced() ? rs.rank() : rs.short_simple_count()));
  }
}

TEST_CASE("small diagrams") {
  RootSystem a1(LieType::parse("A1"));
  for (int k = 0; k < 7; ++k) {
    auto d = weight_diagram(a1, Weight{k});
    auto all = d.expand(a1);
    CHECK(all.size() == static_cast<std::size_t>(k + 1));
    for (const auto& e : all) CHECK(e.multiplicity == 1);
  }
  auto zero = weight_diagram(a1, Weight{0});
  REQUIRE(zero.dominant_entries().size() == 1);
  CHECK(zero.dominant_entries()[0].multiplicity == 1);

  RootSystem a2(LieType::parse("A2"));
  auto adj = weight_diagram(a2, a2.theta()).expand(a2);
  int roots = 0, zeros = 0;
  for (const auto& e : adj) {
    if (e.weight.is_zero())
      zeros += static_cast<int>(e.multiplicity);
    else if (e.multiplicity == 1)
      ++roots;
  }
  CHECK(roots == 6);
  CHECK(zeros == 2);
}

TEST_CASE("total dimension matches the Weyl dimension formula") {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C3", "G2"}) {
    CAPTURE(name);
    RootSystem rs(LieType::parse(name));
    for (const auto& lambda : dominant_up_to_level(rs, 6)) {
      CAPTURE(lambda.to_string());
      auto d = weight_diagram(rs, lambda);
      CHECK(Rational(static_cast<long>(d.dimension(rs))) == rs.weyl_dimension(lambda));
    }
  }
}

TEST_CASE("Weyl symmetry and the root cone") {
  for (const char* name : {"A2", "B2", "G2", "C3"}) {
    CAPTURE(name);
    RootSystem rs(LieType::parse(name));
    for (const auto& lambda : dominant_up_to_level(rs, 3)) {
      auto d = weight_diagram(rs, lambda);
      for (const auto& e : d.expand(rs)) {
        for (int i = 0; i < rs.rank(); ++i) CHECK(d.multiplicity(rs, rs.reflect(e.weight, i)) == e.multiplicity);
        for (const auto& c : rs.simple_root_coordinates(lambda - e.weight)) {
          CHECK(c.get_den() == 1);
          CHECK(c >= 0);
        }
      }
      // Outside the cone: lambda + alpha_i.
      for (int i = 0; i < rs.rank(); ++i) CHECK(d.multiplicity(rs, lambda + rs.simple_root(i)) == 0);
    }
  }
}

TEST_CASE("Freudenthal agrees with the Kostant multiplicity formula") {
  for (const char* name : {"A2", "B2", "G2", "A3"}) {
    CAPTURE(name);
    RootSystem rs(LieType::parse(name));
    oracle::Kostant kostant(rs);
    for (const auto& lambda : dominant_up_to_level(rs, rs.rank() == 3 ? 2 : 3)) {
      auto d = weight_diagram(rs, lambda);
      for (const auto& e : d.dominant_entries()) {
        CAPTURE(lambda.to_string());
        CAPTURE(e.weight.to_string());
        CHECK(kostant.multiplicity(lambda, e.weight) == e.multiplicity);
      }
    }
  }
}

TEST_CASE("non-dominant highest weight is rejected") {
  RootSystem a2(LieType::parse("A2"));
  try {
    (void)weight_diagram(a2, Weight{1, -1});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDominantWeight);
  }
}

TEST_CASE("binary round trip and on-disk cache") {
  RootSystem b2(LieType::parse("B2"));
  auto d = weight_diagram(b2, Weight{2, 1});
  std::stringstream buf;
  write_diagram(buf, b2, d);
  auto back = read_diagram(buf, b2);
  REQUIRE(back.dominant_entries().size() == d.dominant_entries().size());
  for (std::size_t i = 0; i < d.dominant_entries().size(); ++i) {
    CHECK(back.dominant_entries()[i].weight == d.dominant_entries()[i].weight);
    CHECK(back.dominant_entries()[i].multiplicity == d.dominant_entries()[i].multiplicity);
  }
  std::stringstream junk("not a diagram");
  CHECK_THROWS_AS((void)read_diagram(junk, b2), Error);

  const auto dir = std::filesystem::temp_directory_path() / "alcove_cache_test";
  std::filesystem::remove_all(dir);
  {
    DiagramCache cache(b2, dir);
    auto first = cache.get(Weight{2, 1});
    CHECK(cache.size() == 1);
    CHECK(first->dimension(b2) == d.dimension(b2));
  }
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 1);
  {
    DiagramCache cache(b2, dir);
    auto again = cache.get(Weight{2, 1});
    CHECK(again->dimension(b2) == d.dimension(b2));
  }
  std::filesystem::remove_all(dir);
}
