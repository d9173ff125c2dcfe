#include "alcove/category_analysis.hpp"

#include <algorithm>
#include <set>

#include "alcove/errors.hpp"

namespace alcove {

bool ClosedSubset::contains(LabelId id) const { return std::binary_search(members.begin(), members.end(), id); }

std::string ClosedSubset::describe() const {
  const std::string z = source ? source->label : std::string("?");
  switch (kind) {
    case SubsetKind::Gamma: return "Gamma_" + z;
    case SubsetKind::Delta: return "Delta_" + z;
    case SubsetKind::Explicit: break;
  }
  return "explicit(" + std::to_string(members.size()) + ")";
}

ClosedSubset gamma_subset(const AlcoveContext& ctx, const CenterSubgroup& z) {
  ClosedSubset s{SubsetKind::Gamma, z, {}};
  const CenterGroup& center = ctx.center();
  for (LabelId id = 0; id < ctx.size(); ++id) {
    bool annihilated = true;
    for (int e : z.elements)
      if (center.character(e, ctx.label(id)) != 0) {
        annihilated = false;
        break;
      }
    if (annihilated) s.members.push_back(id);
  }
  return s;
}

ClosedSubset delta_subset(const AlcoveContext& ctx, const CenterSubgroup& z) {
  ClosedSubset s{SubsetKind::Delta, z, {}};
  for (int e : z.elements) s.members.push_back(ctx.k_ell(e));
  std::sort(s.members.begin(), s.members.end());
  s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  return s;
}

bool is_closed(const AlcoveContext& ctx, const std::vector<LabelId>& members) {
  std::vector<LabelId> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  auto in = [&](LabelId id) { return std::binary_search(sorted.begin(), sorted.end(), id); };
  for (LabelId a : sorted) {
    if (!in(ctx.dual(a))) return false;
    for (LabelId b : sorted) {
      if (b < a) continue;
      for (const auto& [c, m] : ctx.fuse(a, b))
        if (!in(c)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Degeneracy

std::size_t DegeneracyReport::odd_count() const {
  return static_cast<std::size_t>(
      std::count_if(degenerates.begin(), degenerates.end(), [](const Degenerate& d) { return d.parity < 0; }));
}

bool DegeneracyReport::is_degenerate(LabelId id) const { return parity_of(id) != 0; }

int DegeneracyReport::parity_of(LabelId id) const {
  for (const auto& d : degenerates)
    if (d.label == id) return d.parity;
  return 0;
}

DegeneracyReport degeneracy_report(const ClosedSubset& subset, const ModularData& md, Execution exec) {
  const AlcoveContext& ctx = md.context();
  const auto& members = subset.members;
  const auto count = static_cast<long long>(members.size());
  std::vector<char> flag(members.size(), 0);
  auto scan = [&](std::size_t i) {
    const LabelId l = members[i];
    const CycloValue& dl = md.qdim(l);
    for (LabelId g : members) {
      if (g == AlcoveContext::identity()) continue;
      if (!(md.s_entry(l, g) == dl * md.qdim(g))) return;
    }
    flag[i] = 1;
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) scan(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < members.size(); ++i) scan(i);
  }

  DegeneracyReport report;
  const int half = md.order() / 2;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!flag[i]) continue;
    const LabelId l = members[i];
    const FusionRow row = ctx.fuse(l, ctx.dual(l));
    if (!(row.size() == 1 && row[0].first == AlcoveContext::identity() && row[0].second == 1))
      throw Error(ErrorCode::DegenerateNotInvertible,
                  "degenerate label " + ctx.label(l).to_string() + " is not invertible");
    const int e = md.twist_exponent(l);
    int parity;
    if (e == 0)
      parity = 1;
    else if (md.order() % 2 == 0 && e == half)
      parity = -1;
    else
      throw ConsistencyError("degenerate label with twist other than +-1");
    report.degenerates.push_back({l, parity});
  }

  // Arithmetic criterion for the labels k*ell(z).
  const CenterGroup& center = ctx.center();
  const RootSystem& rs = ctx.root_system();
  for (int z = 0; z < center.order(); ++z) {
    const LabelId u = ctx.k_ell(z);
    if (!subset.contains(u)) continue;
    const Weight l = center.ell_weight(z);
    bool annihilates = true;
    for (LabelId g : members)
      if (center.character(z, ctx.label(g)) != 0) {
        annihilates = false;
        break;
      }
    const int parity = report.parity_of(u);
    if (annihilates != (parity != 0)) throw ConsistencyError("degeneracy disagrees with the character criterion");
    if (parity != 0) {
      report.center_elements.push_back(z);
      const Rational x = Rational(ctx.level()) * rs.inner_product(l, l);
      if (x.get_den() != 1) throw ConsistencyError("k (l, l) is not an integer for a degenerate");
      const bool even = mpz_class(x.get_num() % 2) == 0;
      if (even != (parity > 0)) throw ConsistencyError("parity disagrees with k (l, l)");
    }
  }
  std::size_t covered = 0;
  for (const auto& d : report.degenerates)
    for (int z : report.center_elements)
      if (ctx.k_ell(z) == d.label) ++covered;
  if (covered != report.degenerates.size() && !ctx.invertibles().has_anomaly())
    throw ConsistencyError("degenerates are not the image of a subgroup of the center");
  return report;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Modular: return "Modular";
    case Verdict::Quotientable: return "Quotientable";
    case Verdict::Obstructed: return "Obstructed";
  }
  return "?";
}

Verdict modularity_verdict(const DegeneracyReport& report) {
  if (report.degenerates.size() <= 1) return Verdict::Modular;
  return report.odd_count() == 0 ? Verdict::Quotientable : Verdict::Obstructed;
}

bool dw_condition(const RootSystem& rs, const CenterSubgroup& z, int k) {
  const CenterGroup center(rs);
  for (int e : z.elements) {
    const Weight l = center.ell_weight(e);
    const Rational x = Rational(k) * rs.inner_product(l, l) / 2;
    if (x.get_den() != 1) return false;
  }
  return true;
}

std::vector<int> dw_levels(const RootSystem& rs, const CenterSubgroup& z, int k_max) {
  std::vector<int> out;
  for (int k = 1; k <= k_max; ++k)
    if (dw_condition(rs, z, k)) out.push_back(k);
  return out;
}

bool embeds_as_even_degenerates(const AlcoveContext& ctx, const CenterSubgroup& z, const DegeneracyReport& report) {
  if (modularity_verdict(report) == Verdict::Obstructed) return false;
  for (int e : z.elements)
    if (report.parity_of(ctx.k_ell(e)) != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Quotient

int QuotientData::simple_count() const {
  int n = 0;
  for (int s : stabilizers) n += s;
  return n;
}

QuotientData quotient_data(const AlcoveContext& ctx, const ClosedSubset& subset, const DegeneracyReport& report) {
  if (report.odd_count() != 0) throw Error(ErrorCode::OddDegenerate, "subset has odd degenerate objects");
  QuotientData q;
  q.group_order = static_cast<int>(report.degenerates.size());
  std::set<LabelId> seen;
  for (LabelId g : subset.members) {
    if (seen.count(g)) continue;
    std::set<LabelId> orbit;
    for (const auto& d : report.degenerates) orbit.insert(ctx.phi(d.label, g));
    for (LabelId o : orbit) {
      if (!subset.contains(o)) throw ConsistencyError("degenerate action leaves the subset");
      seen.insert(o);
    }
    if (q.group_order % static_cast<int>(orbit.size()) != 0) throw ConsistencyError("orbit size does not divide |Z|");
    q.orbits.emplace_back(orbit.begin(), orbit.end());
    q.stabilizers.push_back(q.group_order / static_cast<int>(orbit.size()));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Products

namespace {

bool subset_of(const std::vector<LabelId>& a, const ClosedSubset& b) {
  return std::all_of(a.begin(), a.end(), [&](LabelId x) { return b.contains(x); });
}

}  // namespace

std::vector<ProductDecomposition> decompose_product(const ClosedSubset& subset, const DegeneracyReport& report,
                                                    const ModularData& md) {
  const AlcoveContext& ctx = md.context();
  const int order = md.order();
  std::vector<ProductDecomposition> found;
  const auto subgroups = ctx.center().cyclic_subgroups();
  for (const auto& z : subgroups) {
    if (z.order() == 1) continue;
    ClosedSubset delta = delta_subset(ctx, z);
    if (delta.size() < 2 || !subset_of(delta.members, subset)) continue;
    if (!std::all_of(delta.members.begin(), delta.members.end(),
                     [&](LabelId u) { return ctx.invertibles().contains(u); }))
      continue;
    for (const auto& zp : subgroups) {
      if (!z.is_subgroup_of(zp)) continue;
      ClosedSubset gamma = gamma_subset(ctx, zp);
      if (gamma.size() >= subset.size() || !subset_of(gamma.members, subset)) continue;

      ProductDecomposition p{gamma, delta, {}};
      std::set_intersection(gamma.members.begin(), gamma.members.end(), delta.members.begin(), delta.members.end(),
                            std::back_inserter(p.intersection));
      // 1. intersection of even degenerates.
      if (!std::all_of(p.intersection.begin(), p.intersection.end(),
                       [&](LabelId x) { return report.parity_of(x) == 1; }))
        continue;
      // 2.-4. products are simple, cover the subset, and twists multiply.
      bool ok = true;
      std::set<LabelId> covered;
      for (LabelId a : gamma.members) {
        for (LabelId u : delta.members) {
          const LabelId c = ctx.phi(u, a);
          if (!subset.contains(c) ||
              (md.twist_exponent(a) + md.twist_exponent(u) - md.twist_exponent(c)) % order != 0) {
            ok = false;
            break;
          }
          covered.insert(c);
        }
        if (!ok) break;
      }
      if (!ok || covered.size() != subset.size()) continue;

      const auto gamma_report = degeneracy_report(gamma, md);
      const auto delta_report = degeneracy_report(delta, md);
      p.factors_modular = modularity_verdict(gamma_report) == Verdict::Modular &&
                          modularity_verdict(delta_report) == Verdict::Modular;
      if (p.factors_modular && p.intersection.size() == 1 && gamma.size() * delta.size() <= 150) {
        bool factorizes = true;
        for (LabelId a : gamma.members)
          for (LabelId b : gamma.members) {
            const CycloValue sab = md.s_entry(a, b);
            for (LabelId u : delta.members)
              for (LabelId v : delta.members)
                if (!(md.s_entry(ctx.phi(u, a), ctx.phi(v, b)) == sab * md.s_entry(u, v))) factorizes = false;
          }
        if (!factorizes) continue;
        p.s_factorization_checked = true;
      }
      found.push_back(std::move(p));
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const ProductDecomposition& a, const ProductDecomposition& b) {
    return a.gamma_factor.size() > b.gamma_factor.size();
  });
  return found;
}

// ---------------------------------------------------------------------------

SubgroupReport classify_subgroup(const ModularData& md, const CenterSubgroup& z, const ClassifyOptions& options) {
  const AlcoveContext& ctx = md.context();
  SubgroupReport r;
  r.subgroup = z;
  r.gamma = gamma_subset(ctx, z);
  r.delta = delta_subset(ctx, z);
  if (r.gamma.size() <= options.closure_limit) {
    if (!is_closed(ctx, r.gamma.members)) throw ConsistencyError(r.gamma.describe() + " is not closed");
    if (!is_closed(ctx, r.delta.members)) throw ConsistencyError(r.delta.describe() + " is not closed");
  }
  r.degeneracy = degeneracy_report(r.gamma, md);
  r.verdict = modularity_verdict(r.degeneracy);
  r.dw = dw_condition(ctx.root_system(), z, ctx.level());
  if (r.verdict != Verdict::Obstructed) r.quotient = quotient_data(ctx, r.gamma, r.degeneracy);
  if (r.gamma.size() <= options.determinant_limit) {
    const bool nonzero = is_invertible_matrix(md.smatrix(r.gamma.members));
    if (nonzero != (r.verdict == Verdict::Modular)) throw ConsistencyError("determinant disagrees with the verdict");
    r.determinant_nonzero = nonzero;
  }
  if (options.products) r.products = decompose_product(r.gamma, r.degeneracy, md);
  return r;
}

}  // namespace alcove
