#pragma once

// Spin configurations on a ring of n sites, fixed-magnetization sectors,
// translation orbits and dihedral (rotation + reflection) classes.
//
// Sites are 0-based here. Bit i of a configuration is set when site i
// carries an up spin.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xxring {

inline constexpr int kMaxSites = 20;

struct SpinConfiguration {
  std::uint32_t bits = 0;
  int n = 0;

  bool up(int site) const { return (bits >> site) & 1u; }
  int popcount() const { return std::popcount(bits); }

  std::vector<int> up_sites() const {
    std::vector<int> sites;
    for (int i = 0; i < n; ++i)
      if (up(i)) sites.push_back(i);
    return sites;
  }

  friend auto operator<=>(const SpinConfiguration&, const SpinConfiguration&) = default;
};

inline void check_ring_length(int n) {
  if (n < 1 || n > kMaxSites)
    throw std::invalid_argument("ring length must lie in [1, " + std::to_string(kMaxSites) +
                                "], got " + std::to_string(n));
}

inline std::uint32_t ring_mask(int n) {
  return n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1u);
}

inline SpinConfiguration make_configuration(int n, std::uint32_t bits) {
  check_ring_length(n);
  if (bits & ~ring_mask(n))
    throw std::invalid_argument("configuration has bits beyond the ring length");
  return {bits, n};
}

inline SpinConfiguration from_up_sites(int n, std::span<const int> sites) {
  check_ring_length(n);
  std::uint32_t bits = 0;
  for (int s : sites) {
    if (s < 0 || s >= n) throw std::invalid_argument("site index out of range");
    bits |= std::uint32_t{1} << s;
  }
  return {bits, n};
}

inline SpinConfiguration from_up_sites(int n, std::initializer_list<int> sites) {
  return from_up_sites(n, std::span<const int>(sites.begin(), sites.size()));
}

/// Cyclic shift moving the spin at site i to site (i + t) mod n.
inline SpinConfiguration rotate(SpinConfiguration c, int t) {
  const int n = c.n;
  t %= n;
  if (t < 0) t += n;
  if (t == 0) return c;
  const std::uint32_t m = ring_mask(n);
  return {((c.bits << t) | (c.bits >> (n - t))) & m, n};
}

/// Site i maps to site (n - i) mod n.
inline SpinConfiguration reflect(SpinConfiguration c) {
  std::uint32_t out = 0;
  for (int i = 0; i < c.n; ++i)
    if (c.up(i)) out |= std::uint32_t{1} << ((c.n - i) % c.n);
  return {out, c.n};
}

inline SpinConfiguration rotation_minimum(SpinConfiguration c) {
  SpinConfiguration best = c;
  for (int t = 1; t < c.n; ++t) best = std::min(best, rotate(c, t));
  return best;
}

inline SpinConfiguration dihedral_minimum(SpinConfiguration c) {
  return std::min(rotation_minimum(c), rotation_minimum(reflect(c)));
}

/// Smallest t > 0 with rotate(c, t) == c.
inline int period(SpinConfiguration c) {
  for (int t = 1; t < c.n; ++t)
    if (c.n % t == 0 && rotate(c, t) == c) return t;
  return c.n;
}

/// Up-spin offsets of the rotation that places an up spin at site 0 and gives
/// the lexicographically smallest offset list, e.g. {0,1,3} for |j,j+1,j+3>.
inline std::vector<int> offset_pattern(SpinConfiguration c) {
  std::vector<int> best;
  if (c.bits == 0) return best;
  for (int t = 0; t < c.n; ++t) {
    auto r = rotate(c, t);
    if (!r.up(0)) continue;
    auto sites = r.up_sites();
    if (best.empty() || sites < best) best = std::move(sites);
  }
  return best;
}

/// Paper-style label: "j,j+1,j+3". Empty configuration prints as "0".
inline std::string offset_label(SpinConfiguration c) {
  auto offs = offset_pattern(c);
  if (offs.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < offs.size(); ++i) {
    if (i) s += ',';
    s += "j";
    if (offs[i]) s += "+" + std::to_string(offs[i]);
  }
  return s;
}

/// 1-based site list, e.g. "{1,2,4}".
inline std::string site_label(SpinConfiguration c) {
  std::string s = "{";
  bool first = true;
  for (int i : c.up_sites()) {
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

class SectorBasis {
 public:
  SectorBasis() = default;
  SectorBasis(int n, int k, std::vector<SpinConfiguration> configs)
      : n_(n), k_(k), configs_(std::move(configs)) {}

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return configs_.size(); }
  const SpinConfiguration& operator[](std::size_t i) const { return configs_[i]; }
  const std::vector<SpinConfiguration>& configs() const { return configs_; }

  /// Position of `bits` in the basis, or size() when absent.
  std::size_t find(std::uint32_t bits) const {
    auto it = std::lower_bound(configs_.begin(), configs_.end(), bits,
                               [](const SpinConfiguration& c, std::uint32_t b) { return c.bits < b; });
    if (it == configs_.end() || it->bits != bits) return configs_.size();
    return static_cast<std::size_t>(it - configs_.begin());
  }

  std::size_t index_of(SpinConfiguration c) const {
    const auto i = find(c.bits);
    if (c.n != n_ || i == configs_.size())
      throw std::invalid_argument("configuration not in sector");
    return i;
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<SpinConfiguration> configs_;
};

/// All configurations of n sites with k up spins, ascending by bit value.
inline SectorBasis enumerate_sector(int n, int k) {
  check_ring_length(n);
  if (k < 0 || k > n) throw std::invalid_argument("up count must lie in [0, n]");
  std::vector<SpinConfiguration> configs;
  configs.reserve(binomial(n, k));
  if (k == 0) {
    configs.push_back({0u, n});
    return {n, k, std::move(configs)};
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  while (v < limit) {
    configs.push_back({static_cast<std::uint32_t>(v), n});
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return {n, k, std::move(configs)};
}

struct TranslationOrbit {
  SpinConfiguration representative;
  int period = 0;
  /// members[t] == rotate(representative, t)
  std::vector<SpinConfiguration> members;
};

/// Orbits sorted by representative value; each representative is the
/// rotation-minimal member.
inline std::vector<TranslationOrbit> translation_orbits(const SectorBasis& basis) {
  std::vector<TranslationOrbit> orbits;
  std::vector<char> seen(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (seen[i]) continue;
    const SpinConfiguration rep = basis[i];  // ascending scan: first unseen is the minimum
    TranslationOrbit orb{rep, period(rep), {}};
    orb.members.reserve(static_cast<std::size_t>(orb.period));
    for (int t = 0; t < orb.period; ++t) {
      auto m = rotate(rep, t);
      orb.members.push_back(m);
      seen[basis.index_of(m)] = 1;
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

struct DihedralClass {
  SpinConfiguration canonical;
  /// Indices into the orbit list the class was built from (one or two).
  std::vector<std::size_t> orbits;
};

inline std::vector<DihedralClass> dihedral_classes(std::span<const TranslationOrbit> orbits) {
  std::vector<DihedralClass> classes;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto canon = dihedral_minimum(orbits[i].representative);
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const DihedralClass& d) { return d.canonical == canon; });
    if (it == classes.end())
      classes.push_back({canon, {i}});
    else
      it->orbits.push_back(i);
  }
  return classes;
}

/// Class id for every orbit, aligned with `orbits`.
inline std::vector<std::size_t> dihedral_class_ids(std::span<const TranslationOrbit> orbits) {
  std::vector<std::size_t> ids(orbits.size());
  const auto classes = dihedral_classes(orbits);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (auto o : classes[c].orbits) ids[o] = c;
  return ids;
}

}  // namespace xxring
