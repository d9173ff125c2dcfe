#include "alcove/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "alcove/errors.hpp"

namespace alcove {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "cyclotomic coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "cyclotomic coefficient overflow");
  return r;
}

using IntPoly = std::vector<std::int64_t>;

// Exact quotient of a by a monic polynomial b.
IntPoly divide_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw ConsistencyError("polynomial division degree");
  IntPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = checked_add(a[i - db + j], -checked_mul(c, b[j]));
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw ConsistencyError("cyclotomic polynomial division left a remainder");
  return q;
}

IntPoly cyclotomic_polynomial(int m, std::map<int, IntPoly>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = divide_monic(p, cyclotomic_polynomial(d, memo));
  memo.emplace(m, p);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// CycloContext

std::shared_ptr<const CycloContext> CycloContext::get(int order) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CycloContext>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[order];
  if (!slot) slot = std::make_shared<const CycloContext>(order);
  return slot;
}

CycloContext::CycloContext(int order) : order_(order) {
  if (order < 1) throw Error(ErrorCode::Parse, "cyclotomic order must be positive");
  std::map<int, IntPoly> memo;
  phi_ = cyclotomic_polynomial(order, memo);
  degree_ = static_cast<int>(phi_.size()) - 1;
  const auto n = static_cast<std::size_t>(degree_);
  powers_.assign(static_cast<std::size_t>(order_) * n, 0);
  // Row e holds x^e mod Phi. x^e = x * x^(e-1); the overflow into degree n is replaced by -sum phi_j x^j.
  std::vector<std::int64_t> row(n, 0);
  if (n > 0) row[0] = 1;
  for (int e = 0; e < order_; ++e) {
    std::copy(row.begin(), row.end(), powers_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(e) * n));
    if (n == 0) continue;
    const std::int64_t top = row[n - 1];
    for (std::size_t j = n - 1; j > 0; --j) row[j] = row[j - 1];
    row[0] = 0;
    if (top != 0)
      for (std::size_t j = 0; j < n; ++j) row[j] = checked_add(row[j], -checked_mul(top, phi_[j]));
  }
}

int CycloContext::reduce_exponent(long long e) const noexcept {
  long long r = e % order_;
  if (r < 0) r += order_;
  return static_cast<int>(r);
}

std::span<const std::int64_t> CycloContext::power(long long e) const noexcept {
  const auto n = static_cast<std::size_t>(degree_);
  return {powers_.data() + static_cast<std::size_t>(reduce_exponent(e)) * n, n};
}

// ---------------------------------------------------------------------------
// CycloValue

CycloValue::CycloValue(CycloContextPtr ctx) : ctx_(std::move(ctx)), c_(static_cast<std::size_t>(ctx_->degree()), 0) {}

CycloValue CycloValue::integer(CycloContextPtr ctx, std::int64_t n) {
  CycloValue v(std::move(ctx));
  v.c_[0] = n;
  return v;
}

CycloValue CycloValue::root(CycloContextPtr ctx, long long e) {
  CycloValue v(std::move(ctx));
  v.add_root(e, 1);
  return v;
}

CycloValue CycloValue::from_coefficients(CycloContextPtr ctx, std::vector<std::int64_t> coeffs) {
  CycloValue v(std::move(ctx));
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) v.add_root(static_cast<long long>(j), coeffs[j]);
  return v;
}

void CycloValue::require_same(const CycloValue& o) const {
  if (ctx_ != o.ctx_ && (!ctx_ || !o.ctx_ || ctx_->order() != o.ctx_->order()))
    throw Error(ErrorCode::ContextMismatch, "cyclotomic values from different rings");
}

CycloValue& CycloValue::operator+=(const CycloValue& o) {
  require_same(o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = checked_add(c_[j], o.c_[j]);
  return *this;
}

CycloValue& CycloValue::operator-=(const CycloValue& o) {
  require_same(o);
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = checked_add(c_[j], -o.c_[j]);
  return *this;
}

CycloValue& CycloValue::operator*=(std::int64_t s) {
  for (auto& x : c_) x = checked_mul(x, s);
  return *this;
}

CycloValue& CycloValue::operator*=(const CycloValue& o) { return *this = *this * o; }

CycloValue operator*(const CycloValue& a, const CycloValue& b) {
  a.require_same(b);
  const std::size_t n = a.c_.size();
  std::vector<std::int64_t> buf(n == 0 ? 0 : 2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (b.c_[j] != 0) buf[i + j] = checked_add(buf[i + j], checked_mul(a.c_[i], b.c_[j]));
  }
  CycloValue r(a.ctx_);
  for (std::size_t i = 0; i < n; ++i) r.c_[i] = buf[i];
  for (std::size_t e = n; e < buf.size(); ++e)
    if (buf[e] != 0) r.add_root(static_cast<long long>(e), buf[e]);
  return r;
}

CycloValue operator-(CycloValue a) {
  for (auto& x : a.c_) x = checked_mul(x, -1);
  return a;
}

bool operator==(const CycloValue& a, const CycloValue& b) {
  a.require_same(b);
  return a.c_ == b.c_;
}

void CycloValue::add_root(long long e, std::int64_t s) {
  if (s == 0) return;
  const auto row = ctx_->power(e);
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (row[j] != 0) c_[j] = checked_add(c_[j], checked_mul(s, row[j]));
}

CycloValue CycloValue::times_root(long long e) const {
  CycloValue r(ctx_);
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (c_[j] != 0) r.add_root(static_cast<long long>(j) + e, c_[j]);
  return r;
}

CycloValue CycloValue::pow(unsigned n) const {
  CycloValue result = integer(ctx_, 1), base = *this;
  while (n) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base *= base;
  }
  return result;
}

CycloValue CycloValue::galois(long long j) const {
  if (std::gcd(static_cast<long long>(ctx_->order()), j < 0 ? -j : j) != 1)
    throw Error(ErrorCode::Parse, "Galois exponent must be a unit modulo the order");
  CycloValue r(ctx_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) r.add_root(static_cast<long long>(i) * j, c_[i]);
  return r;
}

CycloValue CycloValue::embed(CycloContextPtr target) const {
  if (target->order() % ctx_->order() != 0) throw Error(ErrorCode::ContextMismatch, "target order is not a multiple");
  const long long step = target->order() / ctx_->order();
  CycloValue r(target);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) r.add_root(static_cast<long long>(i) * step, c_[i]);
  return r;
}

bool CycloValue::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

std::optional<int> CycloValue::root_exponent() const {
  for (int e = 0; e < ctx_->order(); ++e) {
    const auto row = ctx_->power(e);
    if (std::equal(c_.begin(), c_.end(), row.begin())) return e;
  }
  return std::nullopt;
}

std::optional<std::int64_t> CycloValue::as_integer() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return std::nullopt;
  return c_.empty() ? 0 : c_[0];
}

std::complex<long double> CycloValue::numeric() const {
  const long double tau = 2.0L * std::acos(-1.0L) / static_cast<long double>(ctx_->order());
  std::complex<long double> z = 0;
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (c_[j] != 0) z += static_cast<long double>(c_[j]) * std::polar(1.0L, tau * static_cast<long double>(j));
  return z;
}

std::vector<std::pair<int, std::int64_t>> CycloValue::terms() const {
  std::vector<std::pair<int, std::int64_t>> t;
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (c_[j] != 0) t.emplace_back(static_cast<int>(j), c_[j]);
  return t;
}

std::string CycloValue::to_string() const {
  const auto t = terms();
  if (t.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i].first << ':' << t[i].second;
  return out.str();
}

// ---------------------------------------------------------------------------
// CycloField

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a = q*b + r over Q.
std::pair<QPoly, QPoly> divmod(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw ConsistencyError("polynomial division by zero");
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  const mpq_class lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const mpq_class c = a[i] / lead;
    q[i - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
    if (i == b.size() - 1) break;
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Reduce a polynomial of any degree modulo Phi into a length-n vector.
std::vector<mpq_class> reduce(const CycloContext& ctx, const QPoly& p) {
  const auto n = static_cast<std::size_t>(ctx.degree());
  std::vector<mpq_class> r(n);
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (p[e] == 0) continue;
    if (e < n) {
      r[e] += p[e];
      continue;
    }
    const auto row = ctx.power(static_cast<long long>(e));
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] != 0) r[j] += p[e] * mpq_class(static_cast<long>(row[j]));
  }
  return r;
}

}  // namespace

CycloField::CycloField(CycloContextPtr ctx) : ctx_(std::move(ctx)), c_(static_cast<std::size_t>(ctx_->degree())) {}

CycloField::CycloField(const CycloValue& v) : ctx_(v.context()) {
  c_.reserve(v.coefficients().size());
  for (std::int64_t x : v.coefficients()) c_.emplace_back(static_cast<long>(x));
}

CycloField::CycloField(CycloContextPtr ctx, std::vector<mpq_class> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<std::size_t>(ctx_->degree())) throw ConsistencyError("coefficient vector has the wrong length");
}

CycloField& CycloField::operator+=(const CycloField& o) {
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

CycloField& CycloField::operator-=(const CycloField& o) {
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

CycloField operator*(const CycloField& a, const CycloField& b) {
  CycloField r(a.ctx_);
  r.c_ = reduce(*a.ctx_, poly_mul(a.c_, b.c_));
  return r;
}

bool CycloField::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

CycloField CycloField::inverse() const {
  if (is_zero()) throw Error(ErrorCode::NonInvertible, "inverse of zero in a cyclotomic field");
  QPoly r0, r1 = c_, s0, s1{mpq_class(1)};
  for (std::int64_t x : ctx_->polynomial()) r0.emplace_back(static_cast<long>(x));
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s = poly_sub(s0, poly_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw ConsistencyError("element shares a factor with the cyclotomic polynomial");
  for (auto& x : s0) x /= r0[0];
  CycloField inv(ctx_);
  inv.c_ = reduce(*ctx_, s0);
  return inv;
}

std::optional<CycloValue> CycloField::to_integral() const {
  std::vector<std::int64_t> out;
  out.reserve(c_.size());
  for (const auto& x : c_) {
    if (x.get_den() != 1 || !x.get_num().fits_slong_p()) return std::nullopt;
    out.push_back(x.get_num().get_si());
  }
  return CycloValue::from_coefficients(ctx_, std::move(out));
}

// ---------------------------------------------------------------------------
// Matrices

CycloMatrix CycloMatrix::restricted(std::span<const std::size_t> rows) const {
  CycloMatrix m;
  m.n = rows.size();
  m.entries.reserve(m.n * m.n);
  for (std::size_t i : rows)
    for (std::size_t j : rows) m.entries.push_back(at(i, j));
  return m;
}

std::size_t exact_rank(const CycloMatrix& m) {
  const std::size_t n = m.n;
  std::vector<CycloField> a;
  a.reserve(n * n);
  for (const auto& v : m.entries) a.emplace_back(v);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && a[piv * n + col].is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[rank * n + j]);
    const CycloField inv = a[rank * n + col].inverse();
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (a[i * n + col].is_zero()) continue;
      const CycloField f = a[i * n + col] * inv;
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[rank * n + j];
    }
    ++rank;
  }
  return rank;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 m) {
  std::vector<u64> f;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    f.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) f.push_back(m);
  return f;
}

u64 to_residue(std::int64_t x, u64 p) {
  const auto r = static_cast<std::int64_t>(static_cast<__int128>(x) % static_cast<__int128>(p));
  return r < 0 ? static_cast<u64>(r + static_cast<std::int64_t>(p)) : static_cast<u64>(r);
}

}  // namespace

std::vector<std::pair<u64, u64>> splitting_primes(int order, std::size_t count) {
  const auto m = static_cast<u64>(order);
  const auto factors = prime_factors(m);
  std::vector<std::pair<u64, u64>> out;
  for (u64 t = ((1ULL << 62) - 1) / m; t > 0 && out.size() < count; --t) {
    const u64 p = m * t + 1;
    if (!is_prime(p)) continue;
    for (u64 g = 2; g < p; ++g) {
      const u64 w = powmod(g, (p - 1) / m, p);
      bool primitive = true;
      for (u64 f : factors)
        if (powmod(w, m / f, p) == 1) primitive = false;
      if (primitive) {
        out.emplace_back(p, w);
        break;
      }
    }
  }
  return out;
}

u64 determinant_mod_prime(const CycloMatrix& m, u64 p, u64 w) {
  const std::size_t n = m.n;
  if (n == 0) return 1 % p;
  const int order = m.entries.front().order();
  std::vector<u64> wp(static_cast<std::size_t>(order));
  wp[0] = 1 % p;
  for (std::size_t e = 1; e < wp.size(); ++e) wp[e] = mulmod(wp[e - 1], w, p);
  std::vector<u64> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    u64 acc = 0;
    const auto& c = m.entries[i].coefficients();
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) acc = (acc + mulmod(to_residue(c[j], p), wp[j], p)) % p;
    a[i] = acc;
  }
  u64 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      det = (p - det) % p;
    }
    det = mulmod(det, a[col * n + col], p);
    const u64 inv = powmod(a[col * n + col], p - 2, p);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i * n + col] == 0) continue;
      const u64 f = mulmod(a[i * n + col], inv, p);
      for (std::size_t j = col; j < n; ++j) a[i * n + j] = (a[i * n + j] + p - mulmod(f, a[col * n + j], p)) % p;
    }
  }
  return det;
}

bool is_invertible_matrix(const CycloMatrix& m) {
  if (m.n == 0) return true;
  const int order = m.entries.front().order();
  for (const auto& [p, w] : splitting_primes(order, 2))
    if (determinant_mod_prime(m, p, w) != 0) return true;
  return exact_rank(m) == m.n;
}

}  // namespace alcove
