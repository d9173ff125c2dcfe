#include "alcove/invariants.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "alcove/errors.hpp"

namespace alcove {

// ---------------------------------------------------------------------------
// Linking matrices

LinkingMatrix::LinkingMatrix(std::size_t n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n_ * n_) throw Error(ErrorCode::Parse, "linking matrix has the wrong number of entries");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (at(i, j) != at(j, i))
        throw Error(ErrorCode::NonSymmetricMatrix, "linking matrix is not symmetric at (" + std::to_string(i + 1) +
                                                       "," + std::to_string(j + 1) + ")");
}

LinkingMatrix LinkingMatrix::diagonal(const std::vector<std::int64_t>& framings) {
  const std::size_t n = framings.size();
  std::vector<std::int64_t> a(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = framings[i];
  return LinkingMatrix(n, std::move(a));
}

LinkingMatrix LinkingMatrix::read(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw Error(ErrorCode::Parse, "linking matrix: expected a component count");
  std::vector<std::int64_t> a;
  a.reserve(static_cast<std::size_t>(n * n));
  for (long long i = 0; i < n * n; ++i) {
    long long v;
    if (!(in >> v)) throw Error(ErrorCode::Parse, "linking matrix: expected " + std::to_string(n * n) + " entries");
    a.push_back(v);
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::Parse, "linking matrix: trailing data '" + extra + "'");
  return LinkingMatrix(static_cast<std::size_t>(n), std::move(a));
}

LinkingMatrix LinkingMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::File, "cannot open " + path.string());
  return read(in);
}

void LinkingMatrix::write(std::ostream& out) const {
  out << n_ << '\n';
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out << (j ? " " : "") << at(i, j);
    out << '\n';
  }
}

bool LinkingMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && at(i, j) != 0) return false;
  return true;
}

std::vector<std::int64_t> LinkingMatrix::framings() const {
  std::vector<std::int64_t> f;
  for (std::size_t i = 0; i < n_; ++i) f.push_back(at(i, i));
  return f;
}

int LinkingMatrix::signature() const {
  const std::size_t n = n_;
  std::vector<Rational> m(a_.begin(), a_.end());
  auto e = [&](std::size_t i, std::size_t j) -> Rational& { return m[i * n + j]; };
  int sig = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && e(piv, piv) == 0) ++piv;
    if (piv == n) {
      // No diagonal pivot: make one by adding a row/column with a nonzero off-diagonal entry.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (i != j && e(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      for (std::size_t c = 0; c < n; ++c) e(pi, c) += e(pj, c);
      for (std::size_t r = 0; r < n; ++r) e(r, pi) += e(r, pj);
      piv = pi;
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(e(piv, c), e(k, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(e(r, piv), e(r, k));
    }
    const Rational p = e(k, k);
    sig += p > 0 ? 1 : -1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (e(i, k) == 0) continue;
      const Rational f = e(i, k) / p;
      for (std::size_t c = k; c < n; ++c) e(i, c) -= f * e(k, c);
      for (std::size_t r = k; r < n; ++r) e(r, i) = e(i, r);
    }
  }
  return sig;
}

LinkingMatrix kirby_stabilize(const LinkingMatrix& a, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::Parse, "stabilization sign must be +1 or -1");
  const std::size_t n = a.size() + 1;
  std::vector<std::int64_t> b(n * n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) b[i * n + j] = a.at(i, j);
  b[n * n - 1] = sign;
  return LinkingMatrix(n, std::move(b));
}

LinkingMatrix kirby_slide(const LinkingMatrix& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.size();
  if (i >= n || j >= n || i == j) throw Error(ErrorCode::IndexOutOfRange, "handle slide needs two distinct components");
  std::vector<std::int64_t> b(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b[r * n + c] = a.at(r, c);
  // Row i += row j, then column i += column j.
  for (std::size_t c = 0; c < n; ++c) b[i * n + c] += b[j * n + c];
  for (std::size_t r = 0; r < n; ++r) b[r * n + i] += b[r * n + j];
  return LinkingMatrix(n, std::move(b));
}

// ---------------------------------------------------------------------------
// Surds

std::complex<long double> SurdValue::numeric() const {
  return coeff.numeric() * std::pow(radicand.numeric().real(), static_cast<long double>(half_power) / 2);
}

std::string SurdValue::to_string() const {
  std::ostringstream out;
  out << '(' << coeff.to_string() << ") * (" << radicand.to_string() << ")^(" << half_power << "/2) [zeta_"
      << coeff.order() << ']';
  return out.str();
}

namespace {

CycloValue times_power(const CycloValue& v, const CycloValue& base, int e) {
  return e > 0 ? v * base.pow(static_cast<unsigned>(e)) : v;
}

// Ph * value * R^{-(|sigma| + n)/2} with R = |g|^2, Ph = conj(g)^sigma or g^|sigma|. The omega
// normalizations pass g = I(P) = conj(I(N)) in the role of the Gauss sum.
SurdValue normalize(const CycloValue& g, const CycloValue& value, int sigma, std::size_t n) {
  CycloValue r = g * g.conj();
  if (r.is_zero()) throw Error(ErrorCode::VanishingGaussSum, "normalizing sum vanishes");
  if (auto i = r.as_integer()) r = CycloValue::integer(CycloContext::get(1), *i);
  const CycloValue phase = sigma >= 0 ? g.conj().pow(static_cast<unsigned>(sigma)) : g.pow(static_cast<unsigned>(-sigma));
  return {phase * value, r, -(std::abs(sigma) + static_cast<int>(n))};
}

}  // namespace

bool same_value(const SurdValue& a, const SurdValue& b) {
  const int order = std::lcm(std::lcm(a.coeff.order(), b.coeff.order()), std::lcm(a.radicand.order(), b.radicand.order()));
  const auto ring = CycloContext::get(order);
  const CycloValue ca = a.coeff.embed(ring), cb = b.coeff.embed(ring);
  if (ca.is_zero() || cb.is_zero()) return ca.is_zero() && cb.is_zero();
  const CycloValue ra = a.radicand.embed(ring), rb = b.radicand.embed(ring);
  CycloValue ma = ca * ca.conj(), mb = cb * cb.conj();
  if (ra == rb) {
    const int d = a.half_power - b.half_power;
    ma = times_power(ma, ra, d);
    mb = times_power(mb, ra, -d);
  } else {
    ma = times_power(times_power(ma, ra, a.half_power), rb, -b.half_power);
    mb = times_power(times_power(mb, rb, b.half_power), ra, -a.half_power);
  }
  if (!(ma == mb)) return false;
  const CycloValue cross = ca * cb.conj();
  return cross.is_real() && cross.numeric().real() > 0;
}

// ---------------------------------------------------------------------------
// Gauss sums

int GaussSumSpec::root_order() const { return static_cast<int>(mpz_class(x.get_den()).get_si()); }

void GaussSumSpec::validate() const {
  if (n < 1) throw Error(ErrorCode::Parse, "Gauss sum order must be positive");
  const int b = root_order();
  if (n % 2 == 1 ? b != n : b != 2 * n)
    throw Error(ErrorCode::Parse, "r = exp(2 pi i " + x.get_str() + ") is not a primitive " +
                                      std::to_string(n % 2 ? n : 2 * n) + "-th root of unity");
}

std::string GaussSumSpec::describe() const { return "N=" + std::to_string(n) + " r=exp(2 pi i " + x.get_str() + ")"; }

GaussSumSpec gauss_spec(const ModularData& md, const CenterSubgroup& z) {
  const AlcoveContext& ctx = md.context();
  const ClosedSubset delta = delta_subset(ctx, z);
  const DegeneracyReport report = degeneracy_report(delta, md);
  if (report.odd_count() != 0) throw Error(ErrorCode::OddDegenerate, delta.describe() + " has odd degenerate objects");
  GaussSumSpec spec;
  spec.n = static_cast<int>(delta.size() / report.degenerates.size());
  const RootSystem& rs = ctx.root_system();
  Rational best(0);
  bool first = true;
  for (int e : z.elements) {
    const Weight l = ctx.center().ell_weight(e);
    const Rational v = Rational(ctx.level()) * rs.inner_product(l, l);
    if (first || v.get_den() > best.get_den()) {
      best = v;
      first = false;
    }
  }
  if (best.get_den() != spec.n) throw ConsistencyError("order modulo even degenerates disagrees with the denominator");
  spec.x = best / 2;
  spec.x -= mpz_class(spec.x.get_num() / spec.x.get_den());  // reduce into [0,1)
  if (spec.x < 0) spec.x += 1;
  spec.validate();
  return spec;
}

CycloValue gauss_sum(const GaussSumSpec& spec) {
  spec.validate();
  const auto ring = CycloContext::get(spec.root_order());
  const long long a = spec.x.get_num().get_si();
  CycloValue g(ring);
  for (long long m = 1; m <= spec.n; ++m) g.add_root(a * m * m, 1);
  return g;
}

CycloValue invertible_link_state_sum(const LinkingMatrix& a, const GaussSumSpec& spec) {
  spec.validate();
  const int b = spec.root_order();
  const auto ring = CycloContext::get(b);
  const long long num = spec.x.get_num().get_si();
  const std::size_t n = a.size();
  std::vector<std::int64_t> hist(static_cast<std::size_t>(b), 0);
  std::vector<long long> l(n, 0);
  while (true) {
    long long q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (l[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) q += l[i] * a.at(i, j) * l[j];
    }
    long long e = (num * (q % b)) % b;
    if (e < 0) e += b;
    ++hist[static_cast<std::size_t>(e)];
    std::size_t i = 0;
    while (i < n && ++l[i] == spec.n) l[i++] = 0;
    if (i == n) break;
  }
  CycloValue s(ring);
  for (int e = 0; e < b; ++e) s.add_root(e, hist[static_cast<std::size_t>(e)]);
  return s;
}

SurdValue moo_invariant(const LinkingMatrix& a, const GaussSumSpec& spec) {
  const CycloValue g = gauss_sum(spec);
  try {
    return normalize(g, invertible_link_state_sum(a, spec), a.signature(), a.size());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::VanishingGaussSum)
      throw Error(ErrorCode::VanishingGaussSum, "Gauss sum G_N(r) vanishes for " + spec.describe());
    throw;
  }
}

// ---------------------------------------------------------------------------
// State sums from modular data

CycloValue delta_state_sum(const LinkingMatrix& a, const ModularData& md, const ClosedSubset& delta) {
  const std::size_t d = delta.size();
  const int order = md.order();
  std::vector<int> twist(d);
  std::vector<int> hopf(d * d);
  for (std::size_t u = 0; u < d; ++u) {
    if (!(md.qdim(delta.members[u]) == md.one())) throw Error(ErrorCode::NonInvertible, "label set is not invertible");
    twist[u] = md.twist_exponent(delta.members[u]);
    for (std::size_t v = 0; v < d; ++v) {
      auto e = md.s_entry(delta.members[u], delta.members[v]).root_exponent();
      if (!e) throw ConsistencyError("Hopf value of invertibles is not a root of unity");
      hopf[u * d + v] = *e;
    }
  }
  const std::size_t n = a.size();
  std::vector<std::int64_t> hist(static_cast<std::size_t>(order), 0);
  std::vector<std::size_t> l(n, 0);
  while (true) {
    long long e = 0;
    for (std::size_t i = 0; i < n; ++i) {
      e += a.at(i, i) * twist[l[i]];
      for (std::size_t j = i + 1; j < n; ++j) e += a.at(i, j) * hopf[l[i] * d + l[j]];
    }
    e %= order;
    if (e < 0) e += order;
    ++hist[static_cast<std::size_t>(e)];
    std::size_t i = 0;
    while (i < n && ++l[i] == d) l[i++] = 0;
    if (i == n) break;
  }
  CycloValue s(md.ring());
  for (int e = 0; e < order; ++e) s.add_root(e, hist[static_cast<std::size_t>(e)]);
  return s;
}

SurdValue delta_invariant(const LinkingMatrix& a, const ModularData& md, const ClosedSubset& delta) {
  const CycloValue in = delta_state_sum(LinkingMatrix::diagonal({-1}), md, delta);
  return normalize(in.conj(), delta_state_sum(a, md, delta), a.signature(), a.size());
}

namespace {

int diagonal_signature(const std::vector<std::int64_t>& framings) {
  int s = 0;
  for (auto f : framings) s += (f > 0) - (f < 0);
  return s;
}

// sum over orbits of weight * qdim(rep)^2 C_rep^f.
CycloValue weighted_unknot(const ModularData& md, const std::vector<LabelId>& reps, const std::vector<std::int64_t>& weights,
                           std::int64_t framing) {
  CycloValue s(md.ring());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const CycloValue& d = md.qdim(reps[i]);
    s += (d * d).times_root(framing * md.twist_exponent(reps[i])) * weights[i];
  }
  return s;
}

CycloValue product_over(const ModularData& md, const std::vector<LabelId>& reps, const std::vector<std::int64_t>& weights,
                        const std::vector<std::int64_t>& framings) {
  std::map<std::int64_t, CycloValue> memo;
  CycloValue p = md.one();
  for (auto f : framings) {
    auto it = memo.find(f);
    if (it == memo.end()) it = memo.emplace(f, weighted_unknot(md, reps, weights, f)).first;
    p *= it->second;
  }
  return p;
}

}  // namespace

CycloValue omega_unknots(const std::vector<std::int64_t>& framings, const ModularData& md, const ClosedSubset& labels) {
  return product_over(md, labels.members, std::vector<std::int64_t>(labels.size(), 1), framings);
}

SurdValue rt_invariant_diagonal(const std::vector<std::int64_t>& framings, const ModularData& md,
                                const ClosedSubset& labels, const DegeneracyReport& report) {
  if (modularity_verdict(report) != Verdict::Modular)
    throw Error(ErrorCode::NonModularLabelSet, labels.describe() + " is not modular");
  const CycloValue in = omega_unknots({-1}, md, labels);
  return normalize(in.conj(), omega_unknots(framings, md, labels), diagonal_signature(framings), framings.size());
}

namespace {

struct OrbitWeights {
  std::vector<LabelId> reps;
  std::vector<std::int64_t> weights;  // denominator / |stabilizer|
  std::int64_t denominator = 1;
};

OrbitWeights orbit_weights(const QuotientData& q) {
  OrbitWeights w;
  for (int s : q.stabilizers) w.denominator = std::lcm(w.denominator, static_cast<std::int64_t>(s));
  for (std::size_t i = 0; i < q.orbits.size(); ++i) {
    w.reps.push_back(q.orbits[i].front());
    w.weights.push_back(w.denominator / q.stabilizers[i]);
  }
  return w;
}

}  // namespace

SurdValue quotient_invariant_diagonal(const std::vector<std::int64_t>& framings, const ModularData& md,
                                      const QuotientData& quotient) {
  const OrbitWeights w = orbit_weights(quotient);
  // The common denominator cancels between I'(L) and |I'(N)|^n.
  const CycloValue in = product_over(md, w.reps, w.weights, {-1});
  return normalize(in.conj(), product_over(md, w.reps, w.weights, framings), diagonal_signature(framings), framings.size());
}

QuotientRelation quotient_invariant_relation_check(const ModularData& md, const ClosedSubset& subset,
                                                   const QuotientData& quotient,
                                                   const std::vector<std::int64_t>& framings) {
  const OrbitWeights w = orbit_weights(quotient);
  QuotientRelation r;
  r.denominator = w.denominator;
  r.lhs = omega_unknots(framings, md, subset);
  r.rhs = product_over(md, w.reps, w.weights, framings);
  for (std::size_t i = 0; i < framings.size(); ++i) {
    r.lhs *= w.denominator;
    r.rhs *= quotient.group_order;
  }
  r.holds = r.lhs == r.rhs;
  return r;
}

// ---------------------------------------------------------------------------

KirbyFuzzResult kirby_fuzz(const GaussSumSpec& spec, int trials, std::uint64_t seed, std::size_t max_n) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  KirbyFuzzResult result;
  for (int t = 0; t < trials; ++t) {
    const auto n = static_cast<std::size_t>(uniform(0, static_cast<long long>(max_n)));
    std::vector<std::int64_t> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = uniform(-5, 5);
    LinkingMatrix m(n, a), moved = m;
    std::ostringstream moves;
    const auto length = uniform(0, 8);
    for (long long s = 0; s < length; ++s) {
      const bool can_stabilize = moved.size() < max_n;
      if (moved.size() < 2 || (can_stabilize && uniform(0, 2) == 0)) {
        if (!can_stabilize) break;
        const int sign = uniform(0, 1) ? 1 : -1;
        moved = kirby_stabilize(moved, sign);
        moves << " stab" << (sign > 0 ? "+" : "-");
      } else {
        const auto i = static_cast<std::size_t>(uniform(0, static_cast<long long>(moved.size()) - 1));
        auto j = static_cast<std::size_t>(uniform(0, static_cast<long long>(moved.size()) - 2));
        if (j >= i) ++j;
        moved = kirby_slide(moved, i, j);
        moves << " slide(" << i << "," << j << ")";
      }
    }
    ++result.trials;
    if (!same_value(moo_invariant(m, spec), moo_invariant(moved, spec))) {
      if (result.failures++ == 0) {
        std::ostringstream out;
        m.write(out);
        result.first_failure = "matrix\n" + out.str() + "moves:" + moves.str();
      }
    }
  }
  return result;
}

}  // namespace alcove
