#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "alcove/errors.hpp"
#include "alcove/invariants.hpp"
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

GaussSumSpec spec(int n, int num, int den) { return GaussSumSpec{n, Rational(num, den)}; }

SurdValue plain(std::int64_t c, std::int64_t radicand = 1, int half_power = 0) {
  const auto ring = CycloContext::get(1);
  return {CycloValue::integer(ring, c), CycloValue::integer(ring, radicand), half_power};
}

// Signature from Jacobi eigenvalues in long double.
int numeric_signature(const LinkingMatrix& a) {
  const std::size_t n = a.size();
  std::vector<long double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = static_cast<long double>(a.at(i, j));
  for (int sweep = 0; sweep < 100; ++sweep)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m[p * n + q]) < 1e-18L) continue;
        const long double theta = (m[q * n + q] - m[p * n + p]) / (2 * m[p * n + q]);
        const long double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double kp = m[k * n + p], kq = m[k * n + q];
          m[k * n + p] = c * kp - s * kq;
          m[k * n + q] = s * kp + c * kq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double pk = m[p * n + k], qk = m[q * n + k];
          m[p * n + k] = c * pk - s * qk;
          m[q * n + k] = s * pk + c * qk;
        }
      }
  int sig = 0;
  for (std::size_t i = 0; i < n; ++i) sig += (m[i * n + i] > 1e-9L) - (m[i * n + i] < -1e-9L);
  return sig;
}

LinkingMatrix block_sum(const LinkingMatrix& a, const LinkingMatrix& b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) e[i * n + j] = a.at(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) e[(a.size() + i) * n + a.size() + j] = b.at(i, j);
  return LinkingMatrix(n, e);
}

SurdValue product(const SurdValue& a, const SurdValue& b) {
  const int order = std::lcm(a.coeff.order(), b.coeff.order());
  const auto ring = CycloContext::get(order);
  REQUIRE(a.radicand.embed(ring) == b.radicand.embed(ring));
  return {a.coeff.embed(ring) * b.coeff.embed(ring), a.radicand.embed(ring), a.half_power + b.half_power};
}

}  // namespace

TEST_CASE("linking matrices") {
  CHECK_THROWS_AS(LinkingMatrix(2, {0, 1, 2, 0}), Error);
  LinkingMatrix a(3, {2, 1, 0, 1, -1, 3, 0, 3, 0});
  std::stringstream io;
  a.write(io);
  CHECK(LinkingMatrix::read(io) == a);
  std::istringstream bad("2\n1 2\n3");
  CHECK_THROWS_AS(LinkingMatrix::read(bad), Error);
  CHECK_THROWS_AS(LinkingMatrix::load("/nonexistent/matrix.txt"), Error);

  CHECK(kirby_stabilize(LinkingMatrix(), 1) == LinkingMatrix::diagonal({1}));
  CHECK(kirby_slide(LinkingMatrix::diagonal({0, 1}), 0, 1) == LinkingMatrix(2, {1, 1, 1, 1}));
  CHECK_THROWS_AS(kirby_slide(a, 0, 0), Error);
  CHECK_THROWS_AS(kirby_slide(a, 0, 5), Error);

  CHECK(LinkingMatrix(2, {0, 1, 1, 0}).signature() == 0);
  CHECK(LinkingMatrix::diagonal({1, -1, 2, 0}).signature() == 1);
  CHECK(LinkingMatrix().signature() == 0);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5), size(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(size(rng));
    std::vector<std::int64_t> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = trial % 3 == 0 && i == j ? 0 : entry(rng);
    LinkingMatrix m(n, e);
    CHECK(m.signature() == numeric_signature(m));
    CHECK(kirby_stabilize(m, 1).signature() == m.signature() + 1);
    CHECK(kirby_stabilize(m, -1).signature() == m.signature() - 1);
  }
}

TEST_CASE("surd comparison") {
  CHECK(same_value(plain(2, 2, -1), plain(1, 2, 1)));
  CHECK_FALSE(same_value(plain(-2, 2, -1), plain(1, 2, 1)));
  CHECK(same_value(plain(3, 9, -1), plain(1)));
  CHECK(same_value(plain(0, 5, 3), plain(0, 2, 1)));
  CHECK_FALSE(same_value(plain(0), plain(1)));
  auto ring = CycloContext::get(8);
  // (1 + i) / sqrt(2) = zeta_8.
  SurdValue a{CycloValue::root(ring, 0) + CycloValue::root(ring, 2), CycloValue::integer(ring, 2), -1};
  CHECK(same_value(a, SurdValue{CycloValue::root(ring, 1), CycloValue::integer(ring, 1), 0}));
  CHECK_FALSE(same_value(a, SurdValue{CycloValue::root(ring, 7), CycloValue::integer(ring, 1), 0}));
  CHECK(std::abs(a.numeric() - std::polar(1.0L, std::acos(-1.0L) / 4)) < 1e-12);
}

TEST_CASE("Gauss sums") {
  CHECK(gauss_sum(spec(1, 0, 1)) == CycloValue::integer(CycloContext::get(1), 1));
  auto g2 = gauss_sum(spec(2, 1, 4));
  CHECK(g2 == CycloValue::root(g2.context(), 1) + CycloValue::integer(g2.context(), 1));
  for (int n = 1; n <= 25; n += 2)
    for (int a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      auto g = gauss_sum(spec(n, a, n));
      CHECK(std::abs(std::norm(g.numeric()) - n) < 1e-9);
      CHECK((g * g.conj()).as_integer() == n);
    }
  CHECK_THROWS_AS(spec(3, 1, 6).validate(), Error);
  CHECK_THROWS_AS(spec(2, 1, 2).validate(), Error);
}

TEST_CASE("MOO invariant examples") {
  const auto s = spec(2, 1, 4);
  CHECK(same_value(moo_invariant(LinkingMatrix(), s), plain(1)));
  CHECK(same_value(moo_invariant(LinkingMatrix::diagonal({0}), s), plain(1, 2, 1)));
  CHECK(same_value(moo_invariant(LinkingMatrix::diagonal({1}), s), plain(1)));
  CHECK(same_value(moo_invariant(LinkingMatrix::diagonal({-1}), s), plain(1)));
  CHECK(invertible_link_state_sum(LinkingMatrix(), s) == CycloValue::integer(CycloContext::get(4), 1));
  CHECK(invertible_link_state_sum(LinkingMatrix::diagonal({0}), spec(5, 2, 5)) ==
        CycloValue::integer(CycloContext::get(5), 5));
  CHECK(invertible_link_state_sum(LinkingMatrix::diagonal({1}), s) == gauss_sum(s));
  // Lens space L(p,1) invariants are distinct for different framings.
  CHECK_FALSE(same_value(moo_invariant(LinkingMatrix::diagonal({3}), spec(3, 1, 3)),
                         moo_invariant(LinkingMatrix::diagonal({0}), spec(3, 1, 3))));
}

TEST_CASE("Kirby invariance and multiplicativity") {
  for (auto s : {spec(2, 1, 4), spec(3, 1, 3), spec(4, 3, 8), spec(5, 2, 5), spec(6, 1, 12)}) {
    CAPTURE(s.describe());
    const auto result = kirby_fuzz(s, 200, 2024);
    CHECK(result.trials == 200);
    CHECK(result.failures == 0);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      LinkingMatrix a(2, {entry(rng), 1, 1, entry(rng)}), b = LinkingMatrix::diagonal({entry(rng)});
      try {
        const auto joint = moo_invariant(block_sum(a, b), s);
        CHECK(same_value(joint, product(moo_invariant(a, s), moo_invariant(b, s))));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::VanishingGaussSum);
      }
    }
  }
}

TEST_CASE("Gauss-sum data from the alcove") {
  auto t = make("A1", 2);
  CHECK_THROWS_AS((void)gauss_spec(*t.md, t.ctx->center().select("Z2")), Error);
  auto u = make("A1", 1);
  auto s = gauss_spec(*u.md, u.ctx->center().select("Z2"));
  CHECK(s.n == 2);
  CHECK(s.x == Rational(1, 4));
  auto v = make("A2", 3);
  CHECK(gauss_spec(*v.md, v.ctx->center().select("Z3")).n == 1);
}

TEST_CASE("Delta state sums agree with MOO") {
  const std::vector<std::pair<const char*, int>> cases{{"A1", 1}, {"A1", 3}, {"A1", 4}, {"A2", 1}, {"A2", 2}, {"A2", 3}};
  for (auto [name, k] : cases) {
    CAPTURE(name);
    CAPTURE(k);
    auto t = make(name, k);
    const auto z = t.ctx->center().cyclic_subgroups().back();
    const auto delta = delta_subset(*t.ctx, z);
    const auto s = gauss_spec(*t.md, z);
    for (std::int64_t f = -3; f <= 3; ++f)
      for (std::int64_t g = -3; g <= 3; ++g) {
        LinkingMatrix a = LinkingMatrix::diagonal({f, g});
        CHECK(same_value(delta_invariant(a, *t.md, delta), moo_invariant(a, s)));
      }
    LinkingMatrix hopf(2, {1, 1, 1, 2});
    CHECK(same_value(delta_invariant(hopf, *t.md, delta), moo_invariant(hopf, s)));
  }
}

TEST_CASE("diagonal invariants from modular data") {
  auto t = make("A1", 1);
  auto full = gamma_subset(*t.ctx, t.ctx->center().select("Z1"));
  auto report = degeneracy_report(full, *t.md);
  CHECK(same_value(rt_invariant_diagonal({}, *t.md, full, report), plain(1)));
  CHECK(same_value(rt_invariant_diagonal({0}, *t.md, full, report), plain(1, 2, 1)));
  CHECK(same_value(rt_invariant_diagonal({-1}, *t.md, full, report), plain(1)));
  CHECK(same_value(rt_invariant_diagonal({1}, *t.md, full, report), plain(1)));

  for (const char* name : {"A1", "A2", "B2", "G2"})
    for (int k = 1; k <= 4; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      auto u = make(name, k);
      auto labels = gamma_subset(*u.ctx, u.ctx->center().select("Z1"));
      auto rep = degeneracy_report(labels, *u.md);
      // I(H) = I(P) I(N) and I(P) = conj(I(N)).
      const auto ip = omega_unknots({1}, *u.md, labels), in = omega_unknots({-1}, *u.md, labels);
      CHECK(ip == in.conj());
      CycloValue ih(u.md->ring());
      for (LabelId a : labels.members)
        for (LabelId b : labels.members) ih += u.md->qdim(a) * u.md->qdim(b) * u.md->s_entry(a, b);
      CHECK(ih == ip * in);
      const auto x = rt_invariant_diagonal({2, -3}, *u.md, labels, rep);
      CHECK(same_value(x, product(rt_invariant_diagonal({2}, *u.md, labels, rep),
                                  rt_invariant_diagonal({-3}, *u.md, labels, rep))));
      CHECK(same_value(rt_invariant_diagonal({0, 1, -1}, *u.md, labels, rep),
                       rt_invariant_diagonal({0}, *u.md, labels, rep)));
    }

  auto w = make("A1", 4);
  auto gamma = gamma_subset(*w.ctx, w.ctx->center().select("Z2"));
  auto rep = degeneracy_report(gamma, *w.md);
  CHECK_THROWS_AS((void)rt_invariant_diagonal({0}, *w.md, gamma, rep), Error);
}

TEST_CASE("quotient relation") {
  for (int k : {4, 8}) {
    auto t = make("A1", k);
    auto gamma = gamma_subset(*t.ctx, t.ctx->center().select("Z2"));
    auto report = degeneracy_report(gamma, *t.md);
    auto q = quotient_data(*t.ctx, gamma, report);
    CHECK(quotient_invariant_relation_check(*t.md, gamma, q, {}).holds);
    for (std::int64_t f : {-2, -1, 0, 1, 3}) {
      auto r = quotient_invariant_relation_check(*t.md, gamma, q, {f, 1 - f});
      CHECK(r.holds);
      // The normalized invariant is unchanged by passing to orbits.
      const auto i_l = omega_unknots({f}, *t.md, gamma), i_n = omega_unknots({-1}, *t.md, gamma);
      const auto direct = SurdValue{(f > 0 ? i_n : f < 0 ? i_n.conj() : t.md->one()) * i_l,
                                    i_n * i_n.conj(), -(f != 0) - 1};
      CHECK(same_value(direct, quotient_invariant_diagonal({f}, *t.md, q)));
    }
  }
  auto t = make("A1", 4);
  auto gamma = gamma_subset(*t.ctx, t.ctx->center().select("Z2"));
  auto q = quotient_data(*t.ctx, gamma, degeneracy_report(gamma, *t.md));
  auto r = quotient_invariant_relation_check(*t.md, gamma, q, {0});
  // lhs = 2 * den * I'(L) and rhs = |Z| * den * I'(L): ratio I(L) / I'(L) is |Z| = 2.
  CHECK(r.denominator == 2);
  CHECK(r.lhs == CycloValue::integer(t.md->ring(), 12));
  CHECK(r.rhs == CycloValue::integer(t.md->ring(), 12));
}
