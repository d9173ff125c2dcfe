#include "alcove/root_data.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "alcove/errors.hpp"

namespace alcove {

// ---------------------------------------------------------------------------
// Weight

Weight::Weight(int rank) : rank_(rank) {
  if (rank < 0 || rank > kMaxRank) throw Error(ErrorCode::InadmissibleType, "weight rank out of range");
}

Weight::Weight(std::initializer_list<int> coords) : Weight(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Weight Weight::from_span(std::span<const int> coords) {
  Weight w(static_cast<int>(coords.size()));
  std::copy(coords.begin(), coords.end(), w.c_.begin());
  return w;
}

bool Weight::is_dominant() const noexcept {
  for (int i = 0; i < rank_; ++i)
    if (c_[static_cast<std::size_t>(i)] < 0) return false;
  return true;
}

bool Weight::is_zero() const noexcept {
  for (int i = 0; i < rank_; ++i)
    if (c_[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

Weight& Weight::operator+=(const Weight& o) noexcept {
  for (int i = 0; i < rank_; ++i) c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) noexcept {
  for (int i = 0; i < rank_; ++i) c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
  return *this;
}

Weight operator-(Weight a) noexcept {
  for (int i = 0; i < a.rank_; ++i) a.c_[static_cast<std::size_t>(i)] = -a.c_[static_cast<std::size_t>(i)];
  return a;
}

Weight operator*(int s, Weight a) noexcept {
  for (int i = 0; i < a.rank_; ++i) a.c_[static_cast<std::size_t>(i)] *= s;
  return a;
}

bool operator==(const Weight& a, const Weight& b) noexcept {
  return a.rank_ == b.rank_ && std::equal(a.c_.begin(), a.c_.begin() + a.rank_, b.c_.begin());
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.c_.begin(), a.c_.begin() + a.rank_, b.c_.begin(),
                                                b.c_.begin() + b.rank_);
}

std::string Weight::to_string() const {
  std::string out;
  for (int i = 0; i < rank_; ++i) {
    if (i) out += ',';
    out += std::to_string(c_[static_cast<std::size_t>(i)]);
  }
  return out;
}

Weight Weight::parse(std::string_view text, int rank) {
  Weight w(rank);
  int i = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    if (i >= rank) throw Error(ErrorCode::Parse, "too many coordinates in weight '" + std::string(text) + "'");
    auto piece = text.substr(pos, end - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size())
      throw Error(ErrorCode::Parse, "bad weight coordinate '" + std::string(piece) + "'");
    w[i++] = value;
    pos = end + 1;
  }
  if (i != rank) throw Error(ErrorCode::Parse, "weight '" + std::string(text) + "' has wrong rank");
  return w;
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.rank()) * 0x9E3779B97F4A7C15ull;
  for (int c : w.coords()) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(c))) * 0x100000001B3ull + (h >> 29);
  return h;
}

// ---------------------------------------------------------------------------
// LieType

LieType LieType::parse(std::string_view text) {
  if (text.size() < 2) throw Error(ErrorCode::Parse, "Lie type must look like A1, B2, E8");
  LieType t;
  switch (text[0]) {
    case 'A': t.family = Family::A; break;
    case 'B': t.family = Family::B; break;
    case 'C': t.family = Family::C; break;
    case 'D': t.family = Family::D; break;
    case 'E': t.family = Family::E; break;
    case 'F': t.family = Family::F; break;
    case 'G': t.family = Family::G; break;
    default: throw Error(ErrorCode::Parse, "unknown Lie family '" + std::string(text.substr(0, 1)) + "'");
  }
  auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.rank);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw Error(ErrorCode::Parse, "bad rank in Lie type '" + std::string(text) + "'");
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = t.rank >= 1; break;
    case Family::B:
    case Family::C: ok = t.rank >= 2; break;
    case Family::D: ok = t.rank >= 3; break;
    case Family::E: ok = t.rank >= 6 && t.rank <= 8; break;
    case Family::F: ok = t.rank == 4; break;
    case Family::G: ok = t.rank == 2; break;
  }
  if (!ok || t.rank > kMaxRank)
    throw Error(ErrorCode::InadmissibleType, "inadmissible rank for Lie type '" + std::string(text) + "'");
  return t;
}

std::string LieType::name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }

bool LieType::simply_laced() const noexcept {
  return family == Family::A || family == Family::D || family == Family::E;
}

int expected_center_order(const LieType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::B:
    case Family::C: return 2;
    case Family::D: return 4;
    case Family::E: return t.rank == 6 ? 3 : t.rank == 7 ? 2 : 1;
    case Family::F:
    case Family::G: return 1;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// RootSystem

namespace {

// Inner products (a_i, a_j) of simple roots, Bourbaki numbering, long roots of norm 2.
std::vector<Rational> simple_root_products(const LieType& t) {
  const int r = t.rank;
  std::vector<Rational> b(static_cast<std::size_t>(r * r), 0);
  auto at = [&](int i, int j) -> Rational& { return b[static_cast<std::size_t>(i * r + j)]; };
  auto link = [&](int i, int j, const Rational& v) { at(i, j) = v; at(j, i) = v; };
  for (int i = 0; i < r; ++i) at(i, i) = 2;
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1);
      at(r - 1, r - 1) = 1;
      break;
    case Family::C:
      for (int i = 0; i + 1 < r; ++i) {
        at(i, i) = 1;
        link(i, i + 1, i + 2 < r ? Rational(-1, 2) : Rational(-1));
      }
      break;
    case Family::D:
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1);
      link(r - 3, r - 1, -1);
      break;
    case Family::E:
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case Family::F:
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, Rational(-1, 2));
      at(2, 2) = 1;
      at(3, 3) = 1;
      break;
    case Family::G:
      at(0, 0) = Rational(2, 3);
      link(0, 1, -1);
      break;
  }
  for (auto& x : b) x.canonicalize();
  return b;
}

std::vector<Rational> invert(std::vector<Rational> m, int n) {
  std::vector<Rational> inv(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1;
  auto a = [&](std::vector<Rational>& v, int i, int j) -> Rational& { return v[static_cast<std::size_t>(i * n + j)]; };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a(m, piv, col) == 0) ++piv;
    if (piv == n) throw ConsistencyError("singular Cartan matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(m, piv, j), a(m, col, j));
        std::swap(a(inv, piv, j), a(inv, col, j));
      }
    Rational p = a(m, col, col);
    for (int j = 0; j < n; ++j) {
      a(m, col, j) /= p;
      a(inv, col, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(m, i, col) == 0) continue;
      Rational f = a(m, i, col);
      for (int j = 0; j < n; ++j) {
        a(m, i, j) -= f * a(m, col, j);
        a(inv, i, j) -= f * a(inv, col, j);
      }
    }
  }
  return inv;
}

}  // namespace

RootSystem::RootSystem(LieType type) : type_(type) {
  const int r = type_.rank;
  if (r < 1 || r > kMaxRank) throw Error(ErrorCode::InadmissibleType, "inadmissible rank");
  const auto b = simple_root_products(type_);
  simple_norms_.resize(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) simple_norms_[static_cast<std::size_t>(i)] = b[idx(i, i)];

  cartan_.resize(static_cast<std::size_t>(r * r));
  std::vector<Rational> cart_q(static_cast<std::size_t>(r * r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rational c = 2 * b[idx(i, j)] / b[idx(j, j)];
      if (c.get_den() != 1) throw ConsistencyError("non-integral Cartan entry");
      cartan_[idx(i, j)] = static_cast<int>(c.get_num().get_si());
      cart_q[idx(i, j)] = c;
    }
  cartan_inverse_ = invert(cart_q, r);

  gram_.resize(static_cast<std::size_t>(r * r));
  mpz_class lcm = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rational g = cartan_inverse_[idx(i, j)] * b[idx(j, j)] / 2;
      g.canonicalize();
      gram_[idx(i, j)] = g;
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), g.get_den_mpz_t());
    }
  denom_scale_ = static_cast<int>(lcm.get_si());
  gram_scaled_.resize(static_cast<std::size_t>(r * r));
  for (std::size_t k = 0; k < gram_.size(); ++k) {
    Rational s = gram_[k] * denom_scale_;
    gram_scaled_[k] = s.get_num().get_si();
  }

  for (int i = 0; i < r; ++i) {
    Weight a(r), ac(r), f(r);
    const Rational scale = Rational(2) / simple_norms_[static_cast<std::size_t>(i)];
    for (int j = 0; j < r; ++j) {
      a[j] = cartan(i, j);
      Rational c = scale * cartan(i, j);
      ac[j] = static_cast<int>(c.get_num().get_si());
    }
    f[i] = 1;
    simple_roots_.push_back(a);
    simple_coroots_.push_back(ac);
    fundamentals_.push_back(f);
  }

  // Positive roots by string closure, processed in order of height.
  std::map<std::vector<int>, std::size_t> index;
  for (int i = 0; i < r; ++i) {
    PositiveRoot pr;
    pr.simple_coeffs.assign(static_cast<std::size_t>(r), 0);
    pr.simple_coeffs[static_cast<std::size_t>(i)] = 1;
    pr.weight = simple_roots_[static_cast<std::size_t>(i)];
    pr.height = 1;
    index.emplace(pr.simple_coeffs, positive_roots_.size());
    positive_roots_.push_back(std::move(pr));
  }
  for (std::size_t cur = 0; cur < positive_roots_.size(); ++cur) {
    for (int i = 0; i < r; ++i) {
      const PositiveRoot root = positive_roots_[cur];
      int p = 0;
      auto down = root.simple_coeffs;
      while (true) {
        if (down[static_cast<std::size_t>(i)] == 0) break;
        --down[static_cast<std::size_t>(i)];
        if (!index.count(down)) break;
        ++p;
      }
      const int q = p - root.weight[i];
      if (q <= 0) continue;
      auto up = root.simple_coeffs;
      ++up[static_cast<std::size_t>(i)];
      if (index.count(up)) continue;
      PositiveRoot next;
      next.simple_coeffs = up;
      next.weight = root.weight + simple_roots_[static_cast<std::size_t>(i)];
      next.height = root.height + 1;
      index.emplace(up, positive_roots_.size());
      positive_roots_.push_back(std::move(next));
    }
  }
  std::stable_sort(positive_roots_.begin(), positive_roots_.end(),
                   [](const PositiveRoot& x, const PositiveRoot& y) { return x.height < y.height; });
  for (auto& pr : positive_roots_) pr.is_long = scaled_inner(pr.weight, pr.weight) == 2 * denom_scale_;

  rho_ = Weight(r);
  for (int i = 0; i < r; ++i) rho_[i] = 1;

  theta_ = positive_roots_.back().weight;
  bool have_beta = false;
  for (const auto& pr : positive_roots_) {
    if (!pr.is_long && pr.weight.is_dominant()) {
      if (have_beta) throw ConsistencyError("dominant short root is not unique");
      beta_ = pr.weight;
      have_beta = true;
    }
  }
  if (!have_beta) beta_ = theta_;
  if (!theta_.is_dominant() || scaled_inner(theta_, theta_) != 2 * denom_scale_)
    throw ConsistencyError("highest root is not a dominant long root");

  Rational h = inner_product(rho_, theta_) + 1;
  if (h.get_den() != 1) throw ConsistencyError("non-integral dual Coxeter number");
  dual_coxeter_ = static_cast<int>(h.get_num().get_si());

  for (int i = 0; i < r; ++i) {
    Rational c = inner_product(fundamentals_[static_cast<std::size_t>(i)], theta_);
    if (c.get_den() != 1) throw ConsistencyError("non-integral comark");
    comarks_.push_back(static_cast<int>(c.get_num().get_si()));
  }
}

int RootSystem::short_simple_count() const noexcept {
  int n = 0;
  for (int i = 0; i < rank(); ++i) n += is_long_simple(i) ? 0 : 1;
  return n;
}

Rational RootSystem::inner_product(const Weight& a, const Weight& b) const {
  Rational v(scaled_inner(a, b), denom_scale_);
  v.canonicalize();
  return v;
}

std::int64_t RootSystem::scaled_inner(const Weight& a, const Weight& b) const noexcept {
  const int r = rank();
  std::int64_t s = 0;
  for (int i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < r; ++j) row += gram_scaled_[idx(i, j)] * b[j];
    s += row * a[i];
  }
  return s;
}

std::int64_t RootSystem::level_of(const Weight& w) const noexcept {
  std::int64_t s = 0;
  for (int i = 0; i < rank(); ++i) s += static_cast<std::int64_t>(w[i]) * comarks_[static_cast<std::size_t>(i)];
  return s;
}

std::vector<Rational> RootSystem::simple_root_coordinates(const Weight& w) const {
  const int r = rank();
  std::vector<Rational> out(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[static_cast<std::size_t>(i)] += w[j] * cartan_inverse_[idx(j, i)];
  return out;
}

bool RootSystem::in_root_lattice(const Weight& w) const {
  for (const auto& c : simple_root_coordinates(w))
    if (c.get_den() != 1) return false;
  return true;
}

bool RootSystem::in_coroot_lattice(const Weight& w) const {
  const auto c = simple_root_coordinates(w);
  for (int i = 0; i < rank(); ++i) {
    const Rational v = c[static_cast<std::size_t>(i)] * simple_root_norm(i) / 2;
    if (v.get_den() != 1) return false;
  }
  return true;
}

Weight RootSystem::reflect(const Weight& w, int i) const noexcept {
  Weight out = w;
  const int c = w[i];
  const Weight& a = simple_roots_[static_cast<std::size_t>(i)];
  for (int j = 0; j < rank(); ++j) out[j] -= c * a[j];
  return out;
}

Weight RootSystem::dominant_representative(Weight w, int* parity) const noexcept {
  int flips = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rank(); ++i) {
      if (w[i] < 0) {
        w = reflect(w, i);
        ++flips;
        changed = true;
      }
    }
  }
  if (parity) *parity = flips & 1;
  return w;
}

Rational RootSystem::weyl_dimension(const Weight& w) const {
  Rational d = 1;
  const Weight shifted = w + rho_;
  for (const auto& pr : positive_roots_) d *= Rational(scaled_inner(shifted, pr.weight), scaled_inner(rho_, pr.weight));
  d.canonicalize();
  return d;
}

// ---------------------------------------------------------------------------
// CenterGroup

bool CenterSubgroup::contains(int z) const { return std::binary_search(elements.begin(), elements.end(), z); }

bool CenterSubgroup::is_subgroup_of(const CenterSubgroup& other) const {
  return std::includes(other.elements.begin(), other.elements.end(), elements.begin(), elements.end());
}

CenterGroup::CenterGroup(const RootSystem& rs) : rs_(&rs) {
  ell_.push_back(std::nullopt);
  for (int i = 0; i < rs.rank(); ++i)
    if (rs.is_long_simple(i) && rs.comark(i) == 1) ell_.push_back(i);
  const int n = order();
  if (n != expected_center_order(rs.type()))
    throw ConsistencyError("center order for " + rs.name() + " disagrees with the classification table");
  table_.assign(static_cast<std::size_t>(n * n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Weight sum = ell_weight(a) + ell_weight(b);
      for (int c = 0; c < n; ++c)
        if (rs.in_coroot_lattice(sum - ell_weight(c))) {
          table_[static_cast<std::size_t>(a * n + b)] = c;
          break;
        }
      if (table_[static_cast<std::size_t>(a * n + b)] < 0) throw ConsistencyError("center is not closed");
    }
  cyclic_ = false;
  for (int z = 0; z < n; ++z)
    if (element_order(z) == n) cyclic_ = true;
}

Weight CenterGroup::ell_weight(int z) const {
  auto i = ell(z);
  return i ? rs_->fundamental(*i) : rs_->zero();
}

int CenterGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (multiply(a, b) == 0) return b;
  throw ConsistencyError("center element without inverse");
}

int CenterGroup::element_order(int a) const {
  int x = a, n = 1;
  while (x != 0) {
    x = multiply(x, a);
    ++n;
  }
  return n;
}

std::optional<int> CenterGroup::element_for_fundamental(int i) const {
  for (int z = 0; z < order(); ++z)
    if (ell_[static_cast<std::size_t>(z)] == i) return z;
  return std::nullopt;
}

CenterSubgroup CenterGroup::generated_by(int z) const {
  CenterSubgroup s;
  s.generator = z;
  int x = 0;
  do {
    s.elements.push_back(x);
    x = multiply(x, z);
  } while (x != 0);
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

std::vector<CenterSubgroup> CenterGroup::cyclic_subgroups() const {
  std::vector<CenterSubgroup> subs;
  for (int z = 0; z < order(); ++z) {
    auto s = generated_by(z);
    bool seen = false;
    for (const auto& t : subs) seen = seen || t.elements == s.elements;
    if (!seen) subs.push_back(std::move(s));
  }
  std::stable_sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.order() < b.order(); });
  // Labels: "Z<d>" when the order determines the subgroup, otherwise "Z<d>@<i>" (1-based index of ell).
  for (auto& s : subs) {
    int same = 0;
    for (const auto& t : subs) same += t.order() == s.order() ? 1 : 0;
    s.label = "Z" + std::to_string(s.order());
    if (same > 1) s.label += "@" + std::to_string(*ell(s.generator) + 1);
  }
  return subs;
}

CenterSubgroup CenterGroup::select(std::string_view selector) const {
  if (selector.empty() || (selector[0] != 'Z' && selector[0] != 'z'))
    throw Error(ErrorCode::Parse, "subgroup selector must look like Z2 or Z2@1");
  auto body = selector.substr(1);
  auto at = body.find('@');
  int d = 0;
  auto ds = body.substr(0, at);
  auto [p, ec] = std::from_chars(ds.data(), ds.data() + ds.size(), d);
  if (ec != std::errc() || p != ds.data() + ds.size() || d < 1)
    throw Error(ErrorCode::Parse, "bad subgroup order in '" + std::string(selector) + "'");
  if (order() % d != 0)
    throw Error(ErrorCode::Parse, "subgroup order " + std::to_string(d) + " does not divide the center order " +
                                      std::to_string(order()));
  if (!cyclic_ && d == order())
    throw Error(ErrorCode::FullCenterOfD2n, "the full center Z2 x Z2 of " + rs_->name() + " is not supported");
  auto subs = cyclic_subgroups();
  if (at != std::string_view::npos) {
    int i = 0;
    auto is = body.substr(at + 1);
    auto [q, ec2] = std::from_chars(is.data(), is.data() + is.size(), i);
    if (ec2 != std::errc() || q != is.data() + is.size())
      throw Error(ErrorCode::Parse, "bad generator index in '" + std::string(selector) + "'");
    auto z = element_for_fundamental(i - 1);
    if (!z) throw Error(ErrorCode::Parse, "l_" + std::to_string(i) + " is not in the image of ell");
    auto s = generated_by(*z);
    if (s.order() != d) throw Error(ErrorCode::Parse, "generator order does not match selector");
    for (auto& t : subs)
      if (t.elements == s.elements) return t;
  }
  std::vector<CenterSubgroup> matches;
  for (auto& s : subs)
    if (s.order() == d) matches.push_back(s);
  if (matches.size() != 1)
    throw Error(ErrorCode::Parse, "subgroup selector '" + std::string(selector) + "' is ambiguous; use Z" +
                                      std::to_string(d) + "@<i>");
  return matches.front();
}

Rational CenterGroup::character(int z, const Weight& gamma) const {
  Rational v = rs_->inner_product(gamma, ell_weight(z));
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  v -= fl;
  v.canonicalize();
  return v;
}

}  // namespace alcove
