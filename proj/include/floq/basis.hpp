// Truncated occupation-number basis, optionally restricted to a fixed total
// excitation number. Ordering is lexicographic with site 1 most significant.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace floq {

class FockBasis {
public:
    // Cached: repeated calls with the same arguments return the same object,
    // so bases can be compared by pointer.
    static std::shared_ptr<const FockBasis> build(int n_sites, int levels,
                                                  std::optional<int> sector = {});

    int n_sites() const { return n_sites_; }
    int levels() const { return levels_; }
    std::optional<int> sector() const { return sector_; }
    std::size_t dim() const { return keys_.size(); }

    // Occupation tuple of basis element idx (length n_sites).
    std::span<const std::uint8_t> occupation(std::size_t idx) const {
        return {occ_.data() + idx * static_cast<std::size_t>(n_sites_),
                static_cast<std::size_t>(n_sites_)};
    }

    // Index of an occupation tuple, or nullopt if it is not in the basis.
    std::optional<std::size_t> index_of(std::span<const std::uint8_t> occ) const;

    // Mixed-radix key with site 1 most significant.
    std::uint64_t key_of(std::span<const std::uint8_t> occ) const;

    bool same_as(const FockBasis& other) const { return this == &other; }

private:
    FockBasis() = default;

    static std::shared_ptr<const FockBasis> build_uncached(int n_sites, int levels,
                                                           std::optional<int> sector);

    int n_sites_ = 0;
    int levels_ = 0;
    std::optional<int> sector_;
    std::vector<std::uint64_t> keys_;   // ascending
    std::vector<std::uint8_t> occ_;     // dim * n_sites, row-major
};

using BasisPtr = std::shared_ptr<const FockBasis>;

}  // namespace floq
