#include "floq/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace floq {

namespace {
constexpr std::size_t kMaxDim = 10'000'000;
}

// Cached so that independently built Hamiltonians over the same (n, levels,
// sector) share one basis object; states and operators compare bases by
// pointer identity.
std::shared_ptr<const FockBasis> FockBasis::build(int n_sites, int levels,
                                                  std::optional<int> sector) {
    using Key = std::tuple<int, int, int>;
    static std::mutex cache_mutex;
    static std::map<Key, std::weak_ptr<const FockBasis>> cache;
    const Key key_id{n_sites, levels, sector.value_or(-1)};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (auto it = cache.find(key_id); it != cache.end())
            if (auto hit = it->second.lock()) return hit;
    }
    auto built = build_uncached(n_sites, levels, sector);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key_id] = built;
    return built;
}

std::shared_ptr<const FockBasis> FockBasis::build_uncached(int n_sites, int levels,
                                                           std::optional<int> sector) {
    if (n_sites < 1) throw std::invalid_argument("FockBasis: n_sites must be >= 1");
    if (levels != 2 && levels != 3)
        throw std::invalid_argument("FockBasis: levels must be 2 or 3");
    const int max_exc = n_sites * (levels - 1);
    if (sector && (*sector < 0 || *sector > max_exc))
        throw std::invalid_argument("FockBasis: sector outside [0, n*(levels-1)]");

    if (!sector) {
        double full = std::pow(static_cast<double>(levels), n_sites);
        if (full > static_cast<double>(kMaxDim))
            throw std::invalid_argument("FockBasis: dimension exceeds 1e7 guard");
    }

    auto basis = std::shared_ptr<FockBasis>(new FockBasis());
    basis->n_sites_ = n_sites;
    basis->levels_ = levels;
    basis->sector_ = sector;

    // Depth-first enumeration in lexicographic order (site 1 varies slowest),
    // pruning on the remaining reachable excitation count when a sector is set.
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(n_sites), 0);
    std::uint64_t key = 0;
    const auto radix = static_cast<std::uint64_t>(levels);

    auto emit = [&]() {
        basis->keys_.push_back(key);
        basis->occ_.insert(basis->occ_.end(), occ.begin(), occ.end());
        if (basis->keys_.size() > kMaxDim)
            throw std::invalid_argument("FockBasis: dimension exceeds 1e7 guard");
    };

    auto recurse = [&](auto&& self, int site, int remaining) -> void {
        if (site == n_sites) {
            if (!sector || remaining == 0) emit();
            return;
        }
        const int tail = (n_sites - site - 1) * (levels - 1);
        for (int occ_here = 0; occ_here < levels; ++occ_here) {
            if (sector) {
                const int rest = remaining - occ_here;
                if (rest < 0 || rest > tail) continue;
            }
            occ[static_cast<std::size_t>(site)] = static_cast<std::uint8_t>(occ_here);
            key = key * radix + static_cast<std::uint64_t>(occ_here);
            self(self, site + 1, remaining - occ_here);
            key /= radix;
        }
        occ[static_cast<std::size_t>(site)] = 0;
    };
    recurse(recurse, 0, sector.value_or(0));

    return basis;
}

std::uint64_t FockBasis::key_of(std::span<const std::uint8_t> occ) const {
    std::uint64_t key = 0;
    for (std::uint8_t o : occ) key = key * static_cast<std::uint64_t>(levels_) + o;
    return key;
}

std::optional<std::size_t> FockBasis::index_of(std::span<const std::uint8_t> occ) const {
    if (static_cast<int>(occ.size()) != n_sites_) return std::nullopt;
    for (std::uint8_t o : occ)
        if (o >= levels_) return std::nullopt;
    const std::uint64_t key = key_of(occ);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
}

}  // namespace floq
