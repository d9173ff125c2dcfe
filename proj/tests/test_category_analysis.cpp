#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "alcove/category_analysis.hpp"
#include "alcove/errors.hpp"
#include "oracles.hpp"

using namespace alcove;

namespace {

struct Setup {
  std::unique_ptr<AlcoveContext> ctx;
  std::unique_ptr<ModularData> md;
};

Setup make(const char* name, int k) {
  Setup s;
  s.ctx = std::make_unique<AlcoveContext>(oracle::root_system(name), k);
  s.md = std::make_unique<ModularData>(*s.ctx);
  return s;
}

CenterSubgroup z2(const AlcoveContext& ctx) { return ctx.center().select("Z2"); }

}  // namespace

TEST_CASE("Gamma and Delta for su(2)") {
  for (int k = 1; k <= 9; ++k) {
    auto t = make("A1", k);
    const auto& ctx = *t.ctx;
    auto gamma = gamma_subset(ctx, z2(ctx));
    for (LabelId a = 0; a < ctx.size(); ++a)
      CHECK(gamma.contains(a) == ctx.root_system().in_root_lattice(ctx.label(a)));
    auto delta = delta_subset(ctx, z2(ctx));
    REQUIRE(delta.size() == 2);
    CHECK(delta.members[0] == ctx.identity());
    CHECK(ctx.label(delta.members[1]) == Weight{k});
    auto full = gamma_subset(ctx, ctx.center().select("Z1"));
    CHECK(full.size() == ctx.size());
  }
}

TEST_CASE("closure and degenerates are invertible at rank <= 2") {
  for (const char* name : {"A1", "A2", "B2", "G2"}) {
    for (int k = 1; k <= 5; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      auto t = make(name, k);
      const auto& ctx = *t.ctx;
      for (const auto& z : ctx.center().cyclic_subgroups()) {
        for (const auto& subset : {gamma_subset(ctx, z), delta_subset(ctx, z)}) {
          CHECK(is_closed(ctx, subset.members));
          DegeneracyReport report;
          CHECK_NOTHROW(report = degeneracy_report(subset, *t.md));
          CHECK(report == degeneracy_report(subset, *t.md, Execution::Serial));
          // The degenerate set is Delta of the recorded center elements.
          std::vector<LabelId> image;
          for (int e : report.center_elements) image.push_back(ctx.k_ell(e));
          std::sort(image.begin(), image.end());
          std::vector<LabelId> degenerate;
          for (const auto& d : report.degenerates) degenerate.push_back(d.label);
          CHECK(image == degenerate);
          for (const auto& d : report.degenerates) {
            CHECK(ctx.invertibles().contains(d.label));
            // Parity criterion: C = +1 iff k (l, l) is even.
            CHECK(t.md->twist(d.label) == CycloValue::integer(t.md->ring(), d.parity));
          }
        }
      }
      // Parity criterion on every corner.
      for (int z = 0; z < ctx.center().order(); ++z) {
        const Weight l = ctx.center().ell_weight(z);
        const Rational v = Rational(k) * ctx.root_system().inner_product(l, l);
        const bool even = v.get_den() == 1 && v.get_num() % 2 == 0;
        CHECK((t.md->twist(ctx.k_ell(z)) == t.md->one()) == even);
      }
    }
  }
}

TEST_CASE("full alcove is modular") {
  for (const char* name : {"A1", "A2", "B2", "G2", "A3"}) {
    for (int k = 1; k <= 3; ++k) {
      auto t = make(name, k);
      auto report = classify_subgroup(*t.md, t.ctx->center().select("Z1"));
      CHECK(report.verdict == Verdict::Modular);
      CHECK(report.degeneracy.degenerates.size() == 1);
      if (report.determinant_nonzero) CHECK(*report.determinant_nonzero);
    }
  }
}

TEST_CASE("su(2) parity verdicts") {
  for (int k = 1; k <= 12; ++k) {
    CAPTURE(k);
    auto t = make("A1", k);
    auto gamma = gamma_subset(*t.ctx, z2(*t.ctx));
    auto report = degeneracy_report(gamma, *t.md);
    const auto verdict = modularity_verdict(report);
    if (k % 2 == 1) {
      CHECK(verdict == Verdict::Modular);
    } else {
      const LabelId top = t.ctx->require(Weight{k});
      CHECK(report.parity_of(top) == (k % 4 == 0 ? 1 : -1));
      CHECK(verdict == (k % 4 == 0 ? Verdict::Quotientable : Verdict::Obstructed));
    }
    CHECK(dw_condition(t.ctx->root_system(), z2(*t.ctx), k) == (k % 4 == 0));
    CHECK(embeds_as_even_degenerates(*t.ctx, z2(*t.ctx), report) == (k % 4 == 0));
    if (verdict == Verdict::Obstructed) CHECK_THROWS_AS((void)quotient_data(*t.ctx, gamma, report), Error);
  }
  auto t = make("A1", 1);
  CHECK(dw_levels(t.ctx->root_system(), z2(*t.ctx), 12) == std::vector<int>{4, 8, 12});
  CHECK(dw_levels(t.ctx->root_system(), t.ctx->center().select("Z1"), 5) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("quotient orbit data") {
  auto t = make("A1", 4);
  auto gamma = gamma_subset(*t.ctx, z2(*t.ctx));
  auto report = degeneracy_report(gamma, *t.md);
  auto q = quotient_data(*t.ctx, gamma, report);
  CHECK(q.group_order == 2);
  REQUIRE(q.orbits.size() == 2);
  CHECK(q.orbits[0] == std::vector<LabelId>{t.ctx->require(Weight{0}), t.ctx->require(Weight{4})});
  CHECK(q.orbits[1] == std::vector<LabelId>{t.ctx->require(Weight{2})});
  CHECK(q.stabilizers == std::vector<int>{1, 2});
  CHECK(q.simple_count() == 3);
  for (std::size_t i = 0; i < q.orbits.size(); ++i)
    CHECK(static_cast<int>(q.orbits[i].size()) * q.stabilizers[i] == q.group_order);

  auto full = gamma_subset(*t.ctx, t.ctx->center().select("Z1"));
  auto trivial = quotient_data(*t.ctx, full, degeneracy_report(full, *t.md));
  CHECK(trivial.simple_count() == static_cast<int>(full.size()));
}

TEST_CASE("product decompositions") {
  for (int k : {1, 3, 5, 7}) {
    auto t = make("A1", k);
    auto full = gamma_subset(*t.ctx, t.ctx->center().select("Z1"));
    auto products = decompose_product(full, degeneracy_report(full, *t.md), *t.md);
    REQUIRE_FALSE(products.empty());
    const auto& p = products.front();
    CHECK(p.gamma_factor.members == gamma_subset(*t.ctx, z2(*t.ctx)).members);
    CHECK(p.delta_factor.members == delta_subset(*t.ctx, z2(*t.ctx)).members);
    CHECK(p.factors_modular);
    CHECK(p.s_factorization_checked);
    CHECK(p.intersection == std::vector<LabelId>{0});
  }
  for (int k : {2, 4}) {
    auto t = make("A1", k);
    auto full = gamma_subset(*t.ctx, t.ctx->center().select("Z1"));
    CHECK(decompose_product(full, degeneracy_report(full, *t.md), *t.md).empty());
    auto delta = delta_subset(*t.ctx, z2(*t.ctx));
    CHECK(decompose_product(delta, degeneracy_report(delta, *t.md), *t.md).empty());
  }
}

TEST_CASE("relatively prime levels give modular Gamma") {
  for (int k = 1; k <= 7; ++k) {
    auto t = make("A2", k);
    auto report = classify_subgroup(*t.md, t.ctx->center().select("Z3"));
    if (k % 3 != 0) CHECK(report.verdict == Verdict::Modular);
    CHECK(report.dw == (k % 3 == 0));
  }
}
