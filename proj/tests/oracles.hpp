#pragma once
// Slow, independent reference computations used only by the tests.

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "alcove/alcove_fusion.hpp"
#include "alcove/modular_data.hpp"
#include "alcove/multiplicity.hpp"
#include "alcove/root_data.hpp"

namespace oracle {

using alcove::RootSystem;
using alcove::Weight;

inline std::shared_ptr<const RootSystem> root_system(const char* name) {
  return std::make_shared<const RootSystem>(alcove::LieType::parse(name));
}

/// Classical Weyl group as reduced words, found by BFS on the orbit of rho.
struct WeylElement {
  std::vector<int> word;  // apply word[0] first
  int sign() const { return word.size() % 2 ? -1 : 1; }
  Weight apply(const RootSystem& rs, Weight w) const {
    for (int i : word) w = rs.reflect(w, i);
    return w;
  }
};

inline std::vector<WeylElement> weyl_group(const RootSystem& rs) {
  std::vector<WeylElement> out{{}};
  std::map<Weight, bool> seen{{rs.rho(), true}};
  for (std::size_t cur = 0; cur < out.size(); ++cur) {
    for (int i = 0; i < rs.rank(); ++i) {
      WeylElement next = out[cur];
      next.word.push_back(i);
      const Weight img = next.apply(rs, rs.rho());
      if (seen.emplace(img, true).second) out.push_back(next);
    }
  }
  return out;
}

/// Kostant partition function on simple-root coordinates.
class Kostant {
 public:
  explicit Kostant(const RootSystem& rs) : rs_(rs) {
    for (const auto& pr : rs.positive_roots()) roots_.push_back(pr.simple_coeffs);
  }
  std::int64_t count(const Weight& w) {
    auto c = rs_.simple_root_coordinates(w);
    std::vector<int> v;
    for (const auto& x : c) {
      if (x.get_den() != 1) return 0;
      v.push_back(static_cast<int>(x.get_num().get_si()));
    }
    return partitions(v, 0);
  }
  /// Kostant multiplicity formula.
  std::int64_t multiplicity(const Weight& lambda, const Weight& mu) {
    std::int64_t m = 0;
    for (const auto& w : weyl_group(rs_)) m += w.sign() * count(w.apply(rs_, lambda + rs_.rho()) - (mu + rs_.rho()));
    return m;
  }

 private:
  std::int64_t partitions(const std::vector<int>& v, std::size_t from) {
    for (int x : v)
      if (x < 0) return 0;
    if (from == roots_.size()) {
      for (int x : v)
        if (x != 0) return 0;
      return 1;
    }
    auto key = std::make_pair(v, from);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t total = 0;
    std::vector<int> cur = v;
    while (true) {
      total += partitions(cur, from + 1);
      bool ok = true;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] -= roots_[from][static_cast<std::size_t>(i)];
        if (cur[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    memo_[key] = total;
    return total;
  }

  const RootSystem& rs_;
  std::vector<std::vector<int>> roots_;
  std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo_;
};

/// Fusion coefficient by the literal alternating sum over W x (k+h)Q^v, with translations in a box.
/// `reversed` selects the argument order m_gamma(lambda - sigma(eta)) instead of m_gamma(sigma(eta) - lambda).
inline std::int64_t literal_fusion(const alcove::AlcoveContext& ctx, const alcove::WeightDiagram& dg,
                                   const Weight& lambda, const Weight& eta, int radius, bool reversed) {
  const RootSystem& rs = ctx.root_system();
  const int r = rs.rank();
  const int kh = ctx.shifted_level();
  std::int64_t total = 0;
  const auto group = weyl_group(rs);
  std::vector<int> t(static_cast<std::size_t>(r), -radius);
  while (true) {
    Weight shift(r);
    for (int i = 0; i < r; ++i) shift += (kh * t[static_cast<std::size_t>(i)]) * rs.simple_coroot(i);
    for (const auto& w : group) {
      const Weight sigma = w.apply(rs, eta + rs.rho()) + shift - rs.rho();
      const Weight arg = reversed ? lambda - sigma : sigma - lambda;
      total += w.sign() * dg.multiplicity(rs, arg);
    }
    int i = 0;
    while (i < r && ++t[static_cast<std::size_t>(i)] > radius) t[static_cast<std::size_t>(i++)] = -radius;
    if (i == r) break;
  }
  return total;
}

/// Sum_mu m_lambda(mu) zeta^(sign * e(mu)), e(mu) the exponent of q^{(mu, v)}.
inline alcove::CycloValue character_at(const alcove::ModularData& md, alcove::LabelId lambda, const Weight& v,
                                       int sign) {
  const auto& ctx = md.context();
  const RootSystem& rs = ctx.root_system();
  alcove::CycloValue acc(md.ring());
  for (const auto& [mu, m] : ctx.expanded_diagram(lambda))
    acc.add_root(sign * 2LL * rs.scaled_inner(mu, v), m);
  return acc;
}

}  // namespace oracle
