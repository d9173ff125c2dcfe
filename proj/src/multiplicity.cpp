#include "alcove/multiplicity.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <unordered_set>

#include "alcove/errors.hpp"

namespace alcove {

std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& w) {
  std::vector<Weight> orbit{w};
  std::unordered_set<Weight, WeightHash> seen{w};
  for (std::size_t cur = 0; cur < orbit.size(); ++cur) {
    for (int i = 0; i < rs.rank(); ++i) {
      if (orbit[cur][i] == 0) continue;
      Weight r = rs.reflect(orbit[cur], i);
      if (seen.insert(r).second) orbit.push_back(r);
    }
  }
  return orbit;
}

WeightDiagram weight_diagram(const RootSystem& rs, const Weight& highest) {
  if (!highest.is_dominant())
    throw Error(ErrorCode::NonDominantWeight, "highest weight " + highest.to_string() + " is not dominant");

  // Dominant weights below the highest weight, by subtracting positive roots.
  std::vector<Weight> dom{highest};
  std::vector<int> depth{0};
  std::unordered_map<Weight, std::size_t, WeightHash> where{{highest, 0}};
  for (std::size_t cur = 0; cur < dom.size(); ++cur) {
    for (const auto& pr : rs.positive_roots()) {
      Weight next = dom[cur] - pr.weight;
      if (!next.is_dominant() || where.count(next)) continue;
      where.emplace(next, dom.size());
      dom.push_back(next);
      depth.push_back(depth[cur] + pr.height);
    }
  }
  // Depth is the height of highest - mu; recompute exactly since BFS depth may not be minimal.
  for (std::size_t i = 0; i < dom.size(); ++i) {
    auto c = rs.simple_root_coordinates(highest - dom[i]);
    int h = 0;
    for (const auto& x : c) h += static_cast<int>(x.get_num().get_si());
    depth[i] = h;
  }
  std::vector<std::size_t> order(dom.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return depth[a] != depth[b] ? depth[a] < depth[b] : dom[a] > dom[b];
  });

  std::unordered_map<Weight, std::int64_t, WeightHash> mult;
  mult.reserve(dom.size() * 2);
  const Weight top = highest + rs.rho();
  const std::int64_t top_norm = rs.scaled_inner(top, top);
  std::vector<WeightMultiplicity> out;
  out.reserve(dom.size());
  for (std::size_t k : order) {
    const Weight& mu = dom[k];
    if (mu == highest) {
      mult[mu] = 1;
      out.push_back({mu, 1});
      continue;
    }
    // (|l+rho|^2 - |mu+rho|^2) m(mu) = 2 sum_{a>0} sum_{j>=1} (mu + j a, a) m(mu + j a), scaled by L.
    const Weight shifted = mu + rs.rho();
    const std::int64_t denom = top_norm - rs.scaled_inner(shifted, shifted);
    std::int64_t numer = 0;
    for (const auto& pr : rs.positive_roots()) {
      Weight nu = mu + pr.weight;
      while (true) {
        const Weight rep = rs.dominant_representative(nu);
        auto it = mult.find(rep);
        if (it == mult.end()) break;
        numer += 2 * rs.scaled_inner(nu, pr.weight) * it->second;
        nu += pr.weight;
      }
    }
    if (denom <= 0 || numer % denom != 0) throw ConsistencyError("Freudenthal recursion did not divide exactly");
    const std::int64_t m = numer / denom;
    if (m > 0) {
      mult[mu] = m;
      out.push_back({mu, m});
    }
  }
  return WeightDiagram(highest, std::move(out));
}

std::int64_t WeightDiagram::multiplicity(const RootSystem& rs, const Weight& mu) const {
  const Weight rep = rs.dominant_representative(mu);
  for (const auto& e : dominant_)
    if (e.weight == rep) return e.multiplicity;
  return 0;
}

std::vector<WeightMultiplicity> WeightDiagram::expand(const RootSystem& rs) const {
  std::vector<WeightMultiplicity> all;
  for (const auto& e : dominant_)
    for (const auto& w : weyl_orbit(rs, e.weight)) all.push_back({w, e.multiplicity});
  return all;
}

std::int64_t WeightDiagram::dimension(const RootSystem& rs) const {
  std::int64_t d = 0;
  for (const auto& e : dominant_) d += e.multiplicity * static_cast<std::int64_t>(weyl_orbit(rs, e.weight).size());
  return d;
}

std::int64_t weight_multiplicity(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  return weight_diagram(rs, lambda).multiplicity(rs, mu);
}

// ---------------------------------------------------------------------------
// Cache

namespace {

constexpr char kMagic[8] = {'A', 'L', 'C', 'W', 'D', 'I', 'A', 'G'};
constexpr std::uint32_t kFormatVersion = 1;

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw Error(ErrorCode::File, "truncated weight-diagram cache entry");
  return v;
}

}  // namespace

void write_diagram(std::ostream& out, const RootSystem& rs, const WeightDiagram& d) {
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kFormatVersion);
  const std::string name = rs.name();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(rs.rank()));
  for (int c : d.highest().coords()) put<std::int32_t>(out, c);
  put<std::uint64_t>(out, d.dominant_entries().size());
  for (const auto& e : d.dominant_entries()) {
    for (int c : e.weight.coords()) put<std::int32_t>(out, c);
    put<std::int64_t>(out, e.multiplicity);
  }
}

WeightDiagram read_diagram(std::istream& in, const RootSystem& rs) {
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw Error(ErrorCode::File, "not a weight-diagram file");
  if (get<std::uint32_t>(in) != kFormatVersion) throw Error(ErrorCode::File, "unsupported weight-diagram version");
  const auto len = get<std::uint32_t>(in);
  std::string name(len, '\0');
  in.read(name.data(), len);
  if (name != rs.name()) throw Error(ErrorCode::File, "weight-diagram file is for " + name);
  const int rank = static_cast<int>(get<std::uint32_t>(in));
  if (rank != rs.rank()) throw Error(ErrorCode::File, "rank mismatch in weight-diagram file");
  auto read_weight = [&] {
    Weight w(rank);
    for (int i = 0; i < rank; ++i) w[i] = get<std::int32_t>(in);
    return w;
  };
  Weight highest = read_weight();
  const auto n = get<std::uint64_t>(in);
  std::vector<WeightMultiplicity> entries;
  entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Weight w = read_weight();
    entries.push_back({w, get<std::int64_t>(in)});
  }
  return WeightDiagram(highest, std::move(entries));
}

DiagramCache::DiagramCache(const RootSystem& rs, std::optional<std::filesystem::path> dir)
    : rs_(&rs), dir_(std::move(dir)) {}

std::optional<std::filesystem::path> DiagramCache::cache_dir_from_env() {
  const char* v = std::getenv("ALCOVE_CACHE_DIR");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

std::filesystem::path DiagramCache::file_for(const Weight& highest) const {
  std::string stem = rs_->name() + "_";
  for (char c : highest.to_string()) stem += c == ',' ? '_' : c == '-' ? 'm' : c;
  return *dir_ / (stem + ".wdg");
}

std::shared_ptr<const WeightDiagram> DiagramCache::get(const Weight& highest) {
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(highest);
    if (it != memo_.end()) return it->second;
  }
  std::shared_ptr<const WeightDiagram> d;
  if (dir_) {
    std::ifstream in(file_for(highest), std::ios::binary);
    if (in) {
      try {
        d = std::make_shared<const WeightDiagram>(read_diagram(in, *rs_));
      } catch (const Error&) {
        d.reset();
      }
    }
  }
  if (!d) {
    d = std::make_shared<const WeightDiagram>(weight_diagram(*rs_, highest));
    if (dir_) {
      std::error_code ec;
      std::filesystem::create_directories(*dir_, ec);
      auto tmp = file_for(highest);
      tmp += ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary);
        if (out) write_diagram(out, *rs_, *d);
      }
      std::filesystem::rename(tmp, file_for(highest), ec);
    }
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = memo_.emplace(highest, d);
  return it->second;
}

std::size_t DiagramCache::size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

}  // namespace alcove
