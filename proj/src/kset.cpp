#include "hyperboot/kset.hpp"

#include <sstream>

namespace hyperboot {

KSet::KSet(std::initializer_list<int> vertices) {
    std::vector<VertexId> tmp;
    tmp.reserve(vertices.size());
    for (int v : vertices) {
        if (v < 0 || v > 0xFFFF) throw std::invalid_argument("vertex index out of range");
        tmp.push_back(static_cast<VertexId>(v));
    }
    *this = from_unsorted(tmp);
}

KSet KSet::from_unsorted(std::span<const VertexId> vertices) {
    if (vertices.size() > kMaxUniformity) throw std::invalid_argument("set larger than kMaxUniformity");
    KSet s;
    std::copy(vertices.begin(), vertices.end(), s.data_.begin());
    s.size_ = static_cast<std::uint8_t>(vertices.size());
    std::sort(s.data_.begin(), s.data_.begin() + s.size_);
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("duplicate vertex in set");
    return s;
}

KSet KSet::from_sorted(std::span<const VertexId> vertices) {
    if (vertices.size() > kMaxUniformity) throw std::invalid_argument("set larger than kMaxUniformity");
    KSet s;
    std::copy(vertices.begin(), vertices.end(), s.data_.begin());
    s.size_ = static_cast<std::uint8_t>(vertices.size());
    return s;
}

KSet KSet::pair(VertexId a, VertexId b) {
    KSet s;
    s.data_[0] = std::min(a, b);
    s.data_[1] = std::max(a, b);
    s.size_ = 2;
    return s;
}

bool KSet::contains(VertexId v) const { return std::binary_search(begin(), end(), v); }

bool KSet::disjoint(const KSet& other) const {
    auto a = begin();
    auto b = other.begin();
    while (a != end() && b != other.end()) {
        if (*a == *b) return false;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return true;
}

bool KSet::subset_of(const KSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
}

KSet KSet::unite(const KSet& other) const {
    KSet out;
    auto last = std::set_union(begin(), end(), other.begin(), other.end(), out.data_.begin());
    out.size_ = static_cast<std::uint8_t>(last - out.data_.begin());
    return out;
}

KSet KSet::minus(const KSet& other) const {
    KSet out;
    auto last = std::set_difference(begin(), end(), other.begin(), other.end(), out.data_.begin());
    out.size_ = static_cast<std::uint8_t>(last - out.data_.begin());
    return out;
}

KSet KSet::with(VertexId v) const {
    if (contains(v)) return *this;
    if (size_ == kMaxUniformity) throw std::invalid_argument("set larger than kMaxUniformity");
    KSet out = *this;
    auto pos = std::upper_bound(out.data_.begin(), out.data_.begin() + size_, v);
    std::copy_backward(pos, out.data_.begin() + size_, out.data_.begin() + size_ + 1);
    *pos = v;
    ++out.size_;
    return out;
}

KSet KSet::without(VertexId v) const {
    KSet out;
    for (VertexId x : *this)
        if (x != v) out.data_[out.size_++] = x;
    return out;
}

std::string KSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < size_; ++i) os << (i ? "," : "") << data_[i];
    os << '}';
    return os.str();
}

std::size_t KSet::hash() const {
    // FNV-1a over the occupied prefix
    std::uint64_t h = 1469598103934665603ULL ^ size_;
    for (VertexId v : *this) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<KSet> subsets_of(const KSet& pool, std::size_t r) {
    std::vector<KSet> out;
    for_each_subset(pool.size(), r, [&](const KSet& idx) {
        std::array<VertexId, kMaxUniformity> buf{};
        for (std::size_t i = 0; i < r; ++i) buf[i] = pool[idx[i]];
        out.push_back(KSet::from_sorted(std::span<const VertexId>(buf.data(), r)));
        return true;
    });
    return out;
}

}  // namespace hyperboot
