#include "alcove/modular_data.hpp"

#include "alcove/errors.hpp"

namespace alcove {

namespace {

// (t^{2a} - 1) as a field element.
CycloField binomial(const CycloContextPtr& ring, long long a) {
  return CycloField(CycloValue::root(ring, 2 * a) - CycloValue::integer(ring, 1));
}

}  // namespace

ModularData::ModularData(const AlcoveContext& ctx)
    : ctx_(&ctx),
      ring_(CycloContext::get(2 * ctx.root_system().denom_scale() * ctx.shifted_level())),
      twist_exp_(ctx.size()),
      qdim_once_(std::make_unique<std::once_flag[]>(ctx.size())),
      qdim_(ctx.size()),
      weighted_(ctx.size()) {
  const RootSystem& rs = ctx.root_system();
  for (LabelId id = 0; id < ctx.size(); ++id) {
    const Weight& l = ctx.label(id);
    twist_exp_[id] = ring_->reduce_exponent(rs.scaled_inner(l, l + 2 * rs.rho()));
  }
  CycloField denom(CycloValue::integer(ring_, 1));
  for (const auto& pr : rs.positive_roots()) {
    const long long b = rs.scaled_inner(rs.rho(), pr.weight);
    rho_shift_ += b;
    denom = denom * binomial(ring_, b);
  }
  denominator_inverse_ = denom.inverse();
}

int ModularData::pairing_exponent(const Weight& a, const Weight& b) const {
  return ring_->reduce_exponent(2LL * ctx_->shifted_level() * ctx_->root_system().scaled_inner(a, b));
}

const CycloValue& ModularData::qdim(LabelId id) const {
  std::call_once(qdim_once_[id], [&] {
    const RootSystem& rs = ctx_->root_system();
    const auto n = static_cast<std::size_t>(ring_->degree());
    const Weight shifted = ctx_->label(id) + rs.rho();
    // prod_a (t^{A} - t^{-A}) / (t^{B} - t^{-B}) = t^{sum B - sum A} prod (t^{2A} - 1) / prod (t^{2B} - 1).
    // The numerator is accumulated with big-integer coefficients.
    std::vector<mpz_class> v(n), next(n);
    v[0] = 1;
    long long shift = 0;
    for (const auto& pr : rs.positive_roots()) {
      const long long a = rs.scaled_inner(shifted, pr.weight);
      shift += a;
      for (std::size_t j = 0; j < n; ++j) next[j] = -v[j];
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j] == 0) continue;
        const auto row = ring_->power(static_cast<long long>(j) + 2 * a);
        for (std::size_t i = 0; i < n; ++i)
          if (row[i] != 0) next[i] += v[j] * static_cast<long>(row[i]);
      }
      std::swap(v, next);
    }
    const CycloField numerator(ring_, std::vector<mpq_class>(v.begin(), v.end()));
    const CycloField value =
        numerator * denominator_inverse_ * CycloField(CycloValue::root(ring_, rho_shift_ - shift));
    auto integral = value.to_integral();
    if (!integral) throw ConsistencyError("quantum dimension is not a cyclotomic integer");
    weighted_[id] = integral->times_root(twist_exp_[id]);
    qdim_[id] = std::move(*integral);
  });
  return qdim_[id];
}

CycloValue ModularData::s_from_row(LabelId a, LabelId b, const FusionRow& row) const {
  CycloValue acc(ring_);
  for (const auto& [c, m] : row) {
    qdim(c);
    acc += weighted_[c] * m;
  }
  return acc.times_root(-static_cast<long long>(twist_exp_[a]) - twist_exp_[b]);
}

CycloValue ModularData::s_entry(LabelId a, LabelId b) const { return s_from_row(a, b, ctx_->fuse(a, b)); }

CycloMatrix ModularData::smatrix(const FusionTable& table, Execution exec) const {
  if (&table.context() != ctx_) throw Error(ErrorCode::ContextMismatch, "fusion table belongs to another alcove");
  const std::size_t n = table.size();
  CycloMatrix s;
  s.n = n;
  s.entries.assign(n * n, CycloValue());
  const auto count = static_cast<long long>(n);
  auto fill_row = [&](std::size_t a) {
    for (std::size_t b = a; b < n; ++b) {
      CycloValue v = s_from_row(static_cast<LabelId>(a), static_cast<LabelId>(b),
                                table.row(static_cast<LabelId>(a), static_cast<LabelId>(b)));
      s.at(b, a) = v;
      s.at(a, b) = std::move(v);
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long a = 0; a < count; ++a) fill_row(static_cast<std::size_t>(a));
  } else {
    for (std::size_t a = 0; a < n; ++a) fill_row(a);
  }
  return s;
}

CycloMatrix ModularData::smatrix(std::span<const LabelId> members, Execution exec) const {
  const std::size_t n = members.size();
  CycloMatrix s;
  s.n = n;
  s.entries.assign(n * n, CycloValue());
  const auto count = static_cast<long long>(n);
  auto fill_row = [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      CycloValue v = s_entry(members[i], members[j]);
      s.at(j, i) = v;
      s.at(i, j) = std::move(v);
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) fill_row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  }
  return s;
}

}  // namespace alcove
