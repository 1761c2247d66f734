#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperboot {

using VertexId = std::uint16_t;

inline constexpr std::size_t kMaxUniformity = 8;

/// Small strictly sorted vertex set with inline storage.
///
/// Used for hyperedges (size k), sleeve sets (size k-2) and vertex pairs.
class KSet {
public:
    KSet() = default;
    KSet(std::initializer_list<int> vertices);

    /// Builds from arbitrary order; throws on duplicates or overflow.
    static KSet from_unsorted(std::span<const VertexId> vertices);
    static KSet from_sorted(std::span<const VertexId> vertices);
    static KSet pair(VertexId a, VertexId b);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    VertexId operator[](std::size_t i) const { return data_[i]; }
    const VertexId* begin() const { return data_.data(); }
    const VertexId* end() const { return data_.data() + size_; }
    VertexId front() const { return data_[0]; }
    VertexId back() const { return data_[size_ - 1]; }

    bool contains(VertexId v) const;
    bool disjoint(const KSet& other) const;
    bool subset_of(const KSet& other) const;

    KSet unite(const KSet& other) const;
    KSet minus(const KSet& other) const;
    KSet with(VertexId v) const;
    KSet without(VertexId v) const;

    std::string to_string() const;

    friend bool operator==(const KSet& a, const KSet& b) {
        return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
    }
    friend std::strong_ordering operator<=>(const KSet& a, const KSet& b) {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

    std::size_t hash() const;

private:
    std::array<VertexId, kMaxUniformity> data_{};
    std::uint8_t size_ = 0;
};

struct KSetHash {
    std::size_t operator()(const KSet& s) const { return s.hash(); }
};

/// Binomial coefficient with saturation at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// Calls `visit` on every r-subset of {0..n-1} in lexicographic order.
/// Stops early when `visit` returns false.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t r, Visit&& visit) {
    if (r > n) return;
    std::array<VertexId, kMaxUniformity> idx{};
    if (r > kMaxUniformity) throw std::invalid_argument("subset size exceeds kMaxUniformity");
    for (std::size_t i = 0; i < r; ++i) idx[i] = static_cast<VertexId>(i);
    while (true) {
        if (!visit(KSet::from_sorted(std::span<const VertexId>(idx.data(), r)))) return;
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = static_cast<VertexId>(idx[j - 1] + 1);
    }
}

/// All r-subsets of `pool` (sorted) in lexicographic order.
std::vector<KSet> subsets_of(const KSet& pool, std::size_t r);

}  // namespace hyperboot

template <>
struct std::hash<hyperboot::KSet> {
    std::size_t operator()(const hyperboot::KSet& s) const { return s.hash(); }
};
