#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "alcove/errors.hpp"
#include "alcove/modular_data.hpp"
#include "oracles.hpp"

using namespace alcove;

namespace {

int euler_phi(int m) {
  int r = 0;
  for (int i = 1; i <= m; ++i) r += std::gcd(i, m) == 1;
  return r;
}

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

}  // namespace

TEST_CASE("cyclotomic polynomials and reduction") {
  for (int m = 1; m <= 120; ++m) {
    auto ctx = CycloContext::get(m);
    CHECK(ctx->degree() == euler_phi(m));
    auto z = CycloValue::root(ctx, 1);
    CHECK(z.pow(static_cast<unsigned>(m)) == CycloValue::integer(ctx, 1));
    for (int d = 1; d < m; ++d)
      if (m % d == 0) CHECK_FALSE(z.pow(static_cast<unsigned>(d)) == CycloValue::integer(ctx, 1));
    if (m % 2 == 0) CHECK(CycloValue::root(ctx, m / 2) == CycloValue::integer(ctx, -1));
  }
  CHECK(CycloContext::get(12)->polynomial() == std::vector<std::int64_t>{1, 0, -1, 0, 1});
  CHECK(CycloContext::get(105)->polynomial()[7] == -2);
}

TEST_CASE("arithmetic, automorphisms and embeddings") {
  auto ctx = CycloContext::get(24);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-3, 3), expo(0, 47);
  auto random_value = [&] {
    CycloValue v(ctx);
    for (int i = 0; i < 6; ++i) v.add_root(expo(rng), coeff(rng));
    return v;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_value(), b = random_value(), c = random_value();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a * b).galois(5) == a.galois(5) * b.galois(5));
    CHECK(std::abs((a * b).numeric() - a.numeric() * b.numeric()) < 1e-9);
    CHECK((a * a.conj()).is_real());
    auto big = CycloContext::get(72);
    CHECK((a * b).embed(big) == a.embed(big) * b.embed(big));
    CHECK(std::abs(a.embed(big).numeric() - a.numeric()) < 1e-9);
    CHECK(a.times_root(5) == a * CycloValue::root(ctx, 5));
    if (!a.is_zero()) {
      CycloField fa(a);
      auto inv = fa.inverse();
      auto one = (fa * inv).to_integral();
      REQUIRE(one.has_value());
      CHECK(*one == CycloValue::integer(ctx, 1));
    }
  }
  CHECK(CycloValue::root(ctx, 7).root_exponent() == 7);
  CHECK_FALSE((CycloValue::root(ctx, 1) + CycloValue::root(ctx, 2)).root_exponent().has_value());
  CHECK(CycloValue::integer(ctx, 5).as_integer() == 5);
  CHECK(CycloValue::root(ctx, 1).to_string() == "1:1");
  CHECK_THROWS_AS((void)CycloValue::root(ctx, 1).galois(2), Error);
  CHECK_THROWS_AS((void)(CycloValue::root(ctx, 1) + CycloValue::root(CycloContext::get(8), 1)), Error);
  auto huge = CycloValue::integer(ctx, std::int64_t{1} << 62);
  CHECK_THROWS_AS((void)(huge * std::int64_t{4}), Error);
}

TEST_CASE("exact invertibility") {
  auto ctx = CycloContext::get(8);
  CycloMatrix one{1, {CycloValue::integer(ctx, 1)}};
  CHECK(is_invertible_matrix(one));
  CycloMatrix ones{2, {CycloValue::integer(ctx, 1), CycloValue::integer(ctx, 1), CycloValue::integer(ctx, 1),
                       CycloValue::integer(ctx, 1)}};
  CHECK_FALSE(is_invertible_matrix(ones));
  CHECK(exact_rank(ones) == 1);
  // [[1, z], [z^-1, 1]] has determinant 0; [[1, z], [z, 1]] does not.
  auto z = CycloValue::root(ctx, 1);
  CycloMatrix sing{2, {CycloValue::integer(ctx, 1), z, z.conj(), CycloValue::integer(ctx, 1)}};
  CHECK_FALSE(is_invertible_matrix(sing));
  CycloMatrix reg{2, {CycloValue::integer(ctx, 1), z, z, CycloValue::integer(ctx, 1)}};
  CHECK(is_invertible_matrix(reg));
  CHECK(exact_rank(reg) == 2);
  auto primes = splitting_primes(40, 3);
  REQUIRE(primes.size() == 3);
  for (auto [p, w] : primes) {
    CHECK(p % 40 == 1);
    CHECK(p < (std::uint64_t{1} << 62));
  }
}

TEST_CASE("twists") {
  auto s = make("A1", 2);
  CHECK(s.md->twist(0) == s.md->one());
  CHECK(s.md->twist(s.ctx->require(Weight{2})) == CycloValue::integer(s.md->ring(), -1));
  for (const char* name : {"A2", "A3", "B2", "C3", "G2", "D4"}) {
    auto t = make(name, 3);
    CHECK(t.md->twist(0) == t.md->one());
    for (LabelId a = 0; a < t.ctx->size(); ++a) CHECK(t.md->twist(a) == t.md->twist(t.ctx->dual(a)));
  }
}

TEST_CASE("quantum dimensions") {
  auto s = make("A1", 2);
  const auto& d = s.md->qdim(1);
  CHECK(std::abs(d.numeric() - std::complex<long double>(std::sqrt(2.0L), 0)) < 1e-12);
  CHECK(d.is_real());
  for (const char* name : {"A1", "A2", "B2", "G2", "A3", "C3", "B3"}) {
    for (int k = 1; k <= 4; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      auto t = make(name, k);
      const auto& rs = t.ctx->root_system();
      CHECK(t.md->qdim(0) == t.md->one());
      for (LabelId a = 0; a < t.ctx->size(); ++a) {
        const auto& q = t.md->qdim(a);
        CHECK(q.is_real());
        CHECK(q.numeric().real() >= 1 - 1e-9);
        CHECK(std::abs(q.numeric().imag()) < 1e-9);
        // Character of the classical representation at q^rho.
        CHECK(oracle::character_at(*t.md, a, rs.rho(), 1) == q);
      }
      for (LabelId u : t.ctx->invertibles().members) CHECK(t.md->qdim(u) == t.md->one());
      if (t.ctx->size() <= 30) {
        for (LabelId a = 0; a < t.ctx->size(); ++a)
          for (LabelId b = 0; b < t.ctx->size(); ++b) {
            CycloValue sum(t.md->ring());
            for (const auto& [c, m] : t.ctx->fuse(a, b)) sum += t.md->qdim(c) * m;
            CHECK(sum == t.md->qdim(a) * t.md->qdim(b));
          }
      }
    }
  }
}

TEST_CASE("S-matrix identities") {
  for (const char* name : {"A1", "A2", "B2", "G2"}) {
    for (int k = 1; k <= 4; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      auto t = make(name, k);
      const auto& ctx = *t.ctx;
      const auto& rs = ctx.root_system();
      auto table = build_fusion_table(ctx);
      auto s = t.md->smatrix(table);
      CHECK(s == t.md->smatrix(table, Execution::Serial));
      const auto n = static_cast<LabelId>(ctx.size());
      CHECK(s.at(0, 0) == t.md->one());
      int matched_plus = 0, matched_minus = 0;
      for (LabelId a = 0; a < n; ++a) {
        CHECK(s.at(a, 0) == t.md->qdim(a));
        for (LabelId b = 0; b < n; ++b) {
          CHECK(s.at(a, b) == s.at(b, a));
          CHECK(s.at(a, b) == s.at(ctx.dual(a), ctx.dual(b)));
          CHECK(s.at(a, b).conj() == s.at(ctx.dual(a), b));
          CHECK(s.at(a, b) == t.md->s_entry(a, b));
          // Character route: S_ab = qdim(b) chi_a(q^{-(b + rho)}) with one of the two sign conventions.
          const Weight shifted = ctx.label(b) + rs.rho();
          matched_plus += oracle::character_at(*t.md, a, shifted, 1) * t.md->qdim(b) == s.at(a, b);
          matched_minus += oracle::character_at(*t.md, a, shifted, -1) * t.md->qdim(b) == s.at(a, b);
          for (LabelId c = 0; c < n; ++c) {
            CycloValue via_fusion(t.md->ring());
            for (const auto& [e, m] : table.row(a, b)) via_fusion += s.at(e, c) * m;
            CHECK(via_fusion * t.md->qdim(c) == s.at(a, c) * s.at(b, c));
          }
        }
      }
      CHECK(std::max(matched_plus, matched_minus) == static_cast<int>(n * n));
      // Invertible pairing: S_{k l_i, g} = qdim(g) exp(2 pi i (l_i, g)).
      for (int z = 0; z < ctx.center().order(); ++z) {
        const LabelId u = ctx.k_ell(z);
        for (LabelId g = 0; g < n; ++g)
          CHECK(s.at(u, g) == t.md->qdim(g).times_root(t.md->pairing_exponent(ctx.center().ell_weight(z), ctx.label(g))));
      }
      CHECK(is_invertible_matrix(s));
    }
  }
}

TEST_CASE("modularity of the full alcove and a singular subset") {
  for (int k = 1; k <= 5; ++k) {
    auto t = make("A1", k);
    auto table = build_fusion_table(*t.ctx);
    auto s = t.md->smatrix(table);
    CHECK(is_invertible_matrix(s));
    std::vector<std::size_t> even;
    for (LabelId a = 0; a < t.ctx->size(); ++a)
      if (t.ctx->label(a)[0] % 2 == 0) even.push_back(a);
    CHECK(is_invertible_matrix(s.restricted(even)) == (k % 2 == 1));
  }
}

TEST_CASE("E8 level two") {
  auto t = make("E8", 2);
  for (LabelId a = 0; a < t.ctx->size(); ++a) CHECK(t.md->qdim(a).is_real());
  const LabelId psi = t.ctx->invertibles().members[1];
  CHECK(t.md->qdim(psi) == t.md->one());
  CHECK(t.md->twist(psi) == CycloValue::integer(t.md->ring(), -1));
}
