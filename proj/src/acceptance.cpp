#include "alcove/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "alcove/category_analysis.hpp"
#include "alcove/errors.hpp"
#include "alcove/invariants.hpp"
#include "alcove/multiplicity.hpp"

namespace alcove {

namespace {

struct Alcove {
  std::unique_ptr<AlcoveContext> ctx;
  std::unique_ptr<ModularData> md;
};

Alcove make(const std::string& type, int k) {
  Alcove a;
  a.ctx = std::make_unique<AlcoveContext>(std::make_shared<const RootSystem>(LieType::parse(type)), k);
  a.md = std::make_unique<ModularData>(*a.ctx);
  return a;
}

// Counts checks and remembers the first failure.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what();
  }
  void note(std::string s) { notes_ += (notes_.empty() ? "" : "; ") + std::move(s); }
  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::string detail() const {
    std::string d = std::to_string(checks_) + " checks";
    if (failures_) d += ", " + std::to_string(failures_) + " failed, first: " + first_;
    if (!notes_.empty()) d += "; " + notes_;
    return d;
  }

 private:
  long long checks_ = 0, failures_ = 0;
  std::string first_, notes_;
};

std::string where(const std::string& type, int k) { return type + " k=" + std::to_string(k); }

std::int64_t mult(const FusionRow& row, LabelId c) {
  for (const auto& [e, m] : row)
    if (e == c) return m;
  return 0;
}

const std::vector<std::string> kModularTypes{"A1", "A2", "B2", "G2", "A3", "C3"};
const std::vector<std::string> kRankTwo{"A1", "A2", "B2", "G2"};

void full_alcove_modularity(Tally& t) {
  for (const auto& type : kModularTypes)
    for (int k = 1; k <= 5; ++k) {
      auto a = make(type, k);
      const auto full = gamma_subset(*a.ctx, a.ctx->center().select("Z1"));
      const auto report = degeneracy_report(full, *a.md);
      t.check(report.degenerates.size() == 1 && report.degenerates[0].label == 0,
              [&] { return where(type, k) + ": nontrivial degenerate"; });
      const auto s = a.md->smatrix(build_fusion_table(*a.ctx));
      t.check(is_invertible_matrix(s), [&] { return where(type, k) + ": det S = 0"; });
    }
}

void invertible_pairing(Tally& t) {
  for (const auto& type : kModularTypes)
    for (int k = 1; k <= 5; ++k) {
      auto a = make(type, k);
      const auto& ctx = *a.ctx;
      const auto s = a.md->smatrix(build_fusion_table(ctx));
      for (int z = 0; z < ctx.center().order(); ++z) {
        const LabelId u = ctx.k_ell(z);
        const Weight l = ctx.center().ell_weight(z);
        for (LabelId g = 0; g < ctx.size(); ++g) {
          const int p = a.md->pairing_exponent(l, ctx.label(g));
          t.check(s.at(u, g) == a.md->qdim(g).times_root(p),
                  [&] { return where(type, k) + ": S_{k l, g} != qdim(g) e(l, g)"; });
          const int twist_ratio = a.md->twist_exponent(ctx.phi(u, g)) - a.md->twist_exponent(u) - a.md->twist_exponent(g);
          t.check(a.md->zeta_power(twist_ratio) == a.md->zeta_power(p),
                  [&] { return where(type, k) + ": twist ratio != e(l, g)"; });
        }
      }
    }
}

void su2_parity(Tally& t) {
  for (int k = 1; k <= 12; ++k) {
    auto a = make("A1", k);
    const auto gamma = gamma_subset(*a.ctx, a.ctx->center().select("Z2"));
    const Verdict v = modularity_verdict(degeneracy_report(gamma, *a.md));
    const Verdict expected = k % 2 ? Verdict::Modular : k % 4 == 2 ? Verdict::Obstructed : Verdict::Quotientable;
    t.check(v == expected, [&] { return where("A1", k) + ": verdict " + to_string(v); });
  }
}

void dw_scan(Tally& t) {
  const std::vector<std::string> types{"A1", "A2", "A3", "A4", "B2", "C3"};
  for (const auto& type : types) {
    const auto rs = std::make_shared<const RootSystem>(LieType::parse(type));
    const CenterGroup center(*rs);
    for (const auto& z : center.cyclic_subgroups()) {
      std::vector<int> scanned;
      for (int k = 1; k <= 12; ++k) {
        auto a = make(type, k);
        const auto zk = a.ctx->center().select(z.label);
        const auto report = degeneracy_report(gamma_subset(*a.ctx, zk), *a.md);
        if (embeds_as_even_degenerates(*a.ctx, zk, report)) scanned.push_back(k);
      }
      t.check(scanned == dw_levels(*rs, z, 12), [&] { return type + " " + z.label + ": scan != dw_levels"; });
    }
  }
}

void degenerates_invertible(Tally& t) {
  for (const auto& type : kRankTwo)
    for (int k = 1; k <= 5; ++k) {
      auto a = make(type, k);
      const auto& ctx = *a.ctx;
      for (const auto& z : ctx.center().cyclic_subgroups())
        for (const auto& subset : {gamma_subset(ctx, z), delta_subset(ctx, z)}) {
          try {
            const auto report = degeneracy_report(subset, *a.md, Execution::Serial);
            for (const auto& d : report.degenerates) {
              const auto row = ctx.fuse(d.label, ctx.dual(d.label));
              t.check(row.size() == 1 && row[0].first == 0 && row[0].second == 1,
                      [&] { return where(type, k) + ": degenerate " + ctx.label(d.label).to_string() + " not invertible"; });
            }
          } catch (const Error& e) {
            t.check(false, [&] { return where(type, k) + " " + subset.describe() + ": " + e.what(); });
          }
        }
    }
}

void fusion_exhaustive(Tally& t, const std::string& type, int k) {
  auto a = make(type, k);
  const auto& ctx = *a.ctx;
  const auto& rs = ctx.root_system();
  const auto table = build_fusion_table(ctx);
  const LabelId n = static_cast<LabelId>(ctx.size());
  auto w = [&] { return where(type, k); };
  for (LabelId x = 0; x < n; ++x)
    for (LabelId y = 0; y < n; ++y) {
      t.check(table.multiplicity(x, y, 0) == (x == ctx.dual(y) ? 1 : 0), w);
      CycloValue dim(a.md->ring());
      for (const auto& [c, m] : table.row(x, y)) dim += a.md->qdim(c) * m;
      t.check(dim == a.md->qdim(x) * a.md->qdim(y), [&] { return w() + ": qdim not multiplicative"; });
      for (LabelId c = 0; c < n; ++c) {
        const auto v = table.multiplicity(x, y, c);
        t.check(v == table.multiplicity(y, x, c) && v == table.multiplicity(ctx.dual(x), ctx.dual(y), ctx.dual(c)) &&
                    v == table.multiplicity(x, ctx.dual(c), ctx.dual(y)),
                [&] { return w() + ": duality symmetry"; });
        for (LabelId d = 0; d < n; ++d) {
          std::int64_t left = 0, right = 0;
          for (const auto& [m, e] : table.row(x, y)) left += e * table.multiplicity(m, c, d);
          for (const auto& [m, e] : table.row(y, c)) right += e * table.multiplicity(x, m, d);
          t.check(left == right, [&] { return w() + ": associativity"; });
        }
      }
      // lambda + sigma(gamma) is a summand of multiplicity one when it lies in the alcove.
      for (const auto& image : weyl_orbit(rs, ctx.label(y)))
        if (auto id = ctx.find(ctx.label(x) + image))
          t.check(table.multiplicity(x, y, *id) == 1, [&] { return w() + ": extremal summand"; });
    }
  if (k >= 2) {
    const LabelId theta = ctx.require(rs.theta());
    for (LabelId x = 0; x < n; ++x)
      if (!ctx.is_corner(x)) t.check(table.multiplicity(x, theta, x) >= 1, [&] { return w() + ": theta summand"; });
  }
  if (auto beta = ctx.find(rs.beta()); beta && !rs.type().simply_laced())
    for (LabelId x = 0; x < n; ++x) {
      bool short_walls = true;
      for (int i = 0; i < rs.rank(); ++i)
        if (!rs.is_long_simple(i) && ctx.label(x)[i] != 0) short_walls = false;
      if (!short_walls) t.check(table.multiplicity(x, *beta, x) >= 1, [&] { return w() + ": beta summand"; });
    }
}

void fusion_random(Tally& t, const std::string& type, int k, std::mt19937_64& rng, int triples) {
  auto a = make(type, k);
  const auto& ctx = *a.ctx;
  std::uniform_int_distribution<LabelId> pick(0, static_cast<LabelId>(ctx.size() - 1));
  auto w = [&] { return where(type, k); };
  for (int i = 0; i < triples; ++i) {
    const LabelId x = pick(rng), y = pick(rng), c = pick(rng);
    const auto xy = ctx.fuse(x, y), yc = ctx.fuse(y, c);
    // (x y) c and x (y c) as multisets.
    std::map<LabelId, std::int64_t> left, right;
    for (const auto& [m, e] : xy)
      for (const auto& [d, f] : ctx.fuse(m, c)) left[d] += e * f;
    for (const auto& [m, e] : yc)
      for (const auto& [d, f] : ctx.fuse(x, m)) right[d] += e * f;
    t.check(left == right, [&] { return w() + ": associativity"; });
    t.check(xy == ctx.fuse(y, x), [&] { return w() + ": commutativity"; });
    t.check(mult(xy, c) == mult(ctx.fuse(ctx.dual(x), ctx.dual(y)), ctx.dual(c)) &&
                mult(xy, c) == mult(ctx.fuse(x, ctx.dual(c)), ctx.dual(y)),
            [&] { return w() + ": duality symmetry"; });
    CycloValue dim(a.md->ring());
    for (const auto& [m, e] : xy) dim += a.md->qdim(m) * e;
    t.check(dim == a.md->qdim(x) * a.md->qdim(y), [&] { return w() + ": qdim not multiplicative"; });
  }
}

void fusion_suite(Tally& t) {
  for (const auto& type : kRankTwo)
    for (int k = 1; k <= 4; ++k) fusion_exhaustive(t, type, k);
  std::mt19937_64 rng(20240601);
  for (const auto& type : {"A3", "C3"})
    for (int k = 1; k <= 3; ++k) fusion_random(t, type, k, rng, 500);
  t.note("randomized: 500 triples per A3/C3 level");
}

void products(Tally& t) {
  for (int k : {1, 3, 5, 7}) {
    auto a = make("A1", k);
    const auto full = gamma_subset(*a.ctx, a.ctx->center().select("Z1"));
    const auto found = decompose_product(full, degeneracy_report(full, *a.md), *a.md);
    const auto z2 = a.ctx->center().select("Z2");
    const bool ok = !found.empty() && found.front().gamma_factor.members == gamma_subset(*a.ctx, z2).members &&
                    found.front().delta_factor.members == delta_subset(*a.ctx, z2).members &&
                    found.front().s_factorization_checked;
    t.check(ok, [&] { return where("A1", k) + ": expected Gamma_Z2 x Delta_Z2 with S factorization"; });
  }
  for (int k : {2, 4}) {
    auto a = make("A1", k);
    const auto full = gamma_subset(*a.ctx, a.ctx->center().select("Z1"));
    t.check(decompose_product(full, degeneracy_report(full, *a.md), *a.md).empty(),
            [&] { return where("A1", k) + ": unexpected decomposition"; });
  }
}

// All diagonal framing vectors with n <= max_n and |f| <= bound.
std::vector<std::vector<std::int64_t>> diagonals(int max_n, int bound) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == max_n) continue;
    for (int f = -bound; f <= bound; ++f) {
      auto next = out[i];
      next.push_back(f);
      out.push_back(std::move(next));
    }
  }
  return out;
}

void moo_kirby(Tally& t) {
  const std::vector<std::pair<std::string, int>> cases{{"A1", 1}, {"A1", 2}, {"A1", 3}, {"A1", 4},
                                                       {"A2", 1}, {"A2", 2}, {"A2", 3}};
  const auto matrices = diagonals(4, 3);
  std::uint64_t seed = 1;
  for (const auto& [type, k] : cases) {
    auto a = make(type, k);
    const auto z = a.ctx->center().cyclic_subgroups().back();
    const auto delta = delta_subset(*a.ctx, z);
    const auto report = degeneracy_report(delta, *a.md);
    if (report.odd_count() != 0) {
      // Odd degenerates: r is not of the required order and both normalizations vanish.
      const Weight l = a.ctx->center().ell_weight(z.generator);
      const Rational x = Rational(k) * a.ctx->root_system().inner_product(l, l) / 2;
      const auto ring = CycloContext::get(static_cast<int>(mpz_class(x.get_den()).get_si()));
      CycloValue g(ring);
      const int n = static_cast<int>(delta.size());
      for (long long m = 1; m <= n; ++m) g.add_root(x.get_num().get_si() * m * m, 1);
      t.check(g.is_zero() && delta_state_sum(LinkingMatrix::diagonal({-1}), *a.md, delta).is_zero(),
              [&] { return where(type, k) + ": odd degenerate with nonvanishing normalization"; });
      t.note(where(type, k) + " has an odd degenerate; both G_N(r) and I(N) vanish");
      continue;
    }
    const auto spec = gauss_spec(*a.md, z);
    for (const auto& f : matrices) {
      const auto m = LinkingMatrix::diagonal(f);
      t.check(same_value(delta_invariant(m, *a.md, delta), moo_invariant(m, spec)),
              [&] { return where(type, k) + ": Delta state sum != MOO"; });
    }
    const auto fuzz = kirby_fuzz(spec, 200, seed++);
    t.check(fuzz.failures == 0 && fuzz.trials == 200,
            [&] { return where(type, k) + " " + spec.describe() + ": Kirby move changed MOO: " + fuzz.first_failure; });
  }
  t.note(std::to_string(matrices.size()) + " diagonal matrices per case, 200 Kirby sequences per spec");
}

void quotient_relation(Tally& t) {
  const auto framings = diagonals(3, 3);
  for (int k : {4, 8}) {
    auto a = make("A1", k);
    const auto gamma = gamma_subset(*a.ctx, a.ctx->center().select("Z2"));
    const auto q = quotient_data(*a.ctx, gamma, degeneracy_report(gamma, *a.md));
    for (const auto& f : framings)
      t.check(quotient_invariant_relation_check(*a.md, gamma, q, f).holds,
              [&] { return where("A1", k) + ": I(L) != |Z|^n I'(L)"; });
  }
}

void torus_dimension(Tally& t) {
  auto a = make("A1", 4);
  const auto gamma = gamma_subset(*a.ctx, a.ctx->center().select("Z2"));
  const auto q = quotient_data(*a.ctx, gamma, degeneracy_report(gamma, *a.md));
  const std::vector<std::vector<LabelId>> orbits{{a.ctx->require(Weight{0}), a.ctx->require(Weight{4})},
                                                 {a.ctx->require(Weight{2})}};
  t.check(q.orbits == orbits, [] { return std::string("orbits differ from {0,4l},{2l}"); });
  t.check(q.stabilizers == std::vector<int>{1, 2}, [] { return std::string("stabilizers differ from 1,2"); });
  t.check(q.simple_count() == 3, [&] { return "quotient simple count " + std::to_string(q.simple_count()); });
}

struct Criterion {
  const char* title;
  void (*run)(Tally&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"full-alcove modularity", full_alcove_modularity},
    {"su(2) parity verdicts", su2_parity},
    {"DW levels", dw_scan},
    {"degenerates are invertible", degenerates_invertible},
    {"invertible pairing identity", invertible_pairing},
    {"fusion-ring suite", fusion_suite},
    {"product decomposition", products},
    {"MOO and Kirby invariance", moo_kirby},
    {"quotient relation", quotient_relation},
    {"torus dimension", torus_dimension},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw Error(ErrorCode::IndexOutOfRange, "no criterion " + std::to_string(id));
  const auto& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  try {
    c.run(t);
    r.passed = t.passed();
    r.detail = t.detail();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i));
  } else {
    for (int i : ids) out.push_back(run_criterion(i));
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool timing) {
  std::string line = "criterion " + std::to_string(r.id) + ": " + (r.passed ? "PASS " : "FAIL ") + r.title + " (" +
                     r.detail + ")";
  if (timing) {
    char secs[32];
    std::snprintf(secs, sizeof secs, " [%.2fs]", r.seconds);
    line += secs;
  }
  return line;
}

}  // namespace alcove
