#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace mb {

using VertexId = std::uint32_t;

// Hard capacity of the bitset representation. Boards with larger ids are rejected
// at construction time.
inline constexpr VertexId kMaxVertices = 256;

// Fixed-capacity set of vertex ids. Value type, cheap to copy and hash; every
// search in the library keys its memo tables on pairs of these.
class VertexSet {
public:
    static constexpr std::size_t kWords = kMaxVertices / 64;

    constexpr VertexSet() = default;
    constexpr VertexSet(std::initializer_list<VertexId> ids) {
        for (VertexId v : ids) insert(v);
    }

    // {0, 1, ..., n - 1}
    static constexpr VertexSet range(VertexId n) {
        VertexSet s;
        for (VertexId v = 0; v < n; ++v) s.insert(v);
        return s;
    }

    constexpr void insert(VertexId v) { words_[v >> 6] |= bit(v); }
    constexpr void erase(VertexId v) { words_[v >> 6] &= ~bit(v); }
    [[nodiscard]] constexpr bool contains(VertexId v) const {
        return v < kMaxVertices && (words_[v >> 6] & bit(v)) != 0;
    }

    [[nodiscard]] constexpr int size() const {
        int n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }
    [[nodiscard]] constexpr bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    // Smallest element. Undefined on an empty set.
    [[nodiscard]] constexpr VertexId front() const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i]) return static_cast<VertexId>(i * 64 + std::countr_zero(words_[i]));
        return kMaxVertices;
    }
    // Largest element. Undefined on an empty set.
    [[nodiscard]] constexpr VertexId back() const {
        for (std::size_t i = kWords; i-- > 0;)
            if (words_[i]) return static_cast<VertexId>(i * 64 + 63 - std::countl_zero(words_[i]));
        return kMaxVertices;
    }

    [[nodiscard]] constexpr bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    [[nodiscard]] constexpr bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    constexpr VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    constexpr VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    constexpr VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend constexpr VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend constexpr VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend constexpr VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    friend constexpr bool operator==(const VertexSet&, const VertexSet&) = default;
    // Total order: compares from the highest word down, so it agrees with
    // comparing the sets as binary numbers.
    friend constexpr bool operator<(const VertexSet& a, const VertexSet& b) {
        for (std::size_t i = kWords; i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    [[nodiscard]] std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    [[nodiscard]] std::vector<VertexId> to_vector() const {
        std::vector<VertexId> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (VertexId v : *this) out.push_back(v);
        return out;
    }

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = VertexId;
        using difference_type = std::ptrdiff_t;
        using pointer = const VertexId*;
        using reference = VertexId;

        constexpr iterator() = default;
        constexpr iterator(const std::array<std::uint64_t, kWords>* words, std::size_t word)
            : words_(words), word_(word) {
            if (word_ < kWords) {
                current_ = (*words_)[word_];
                skip();
            }
        }
        constexpr VertexId operator*() const {
            return static_cast<VertexId>(word_ * 64 + std::countr_zero(current_));
        }
        constexpr iterator& operator++() {
            current_ &= current_ - 1;
            skip();
            return *this;
        }
        constexpr iterator operator++(int) {
            iterator t = *this;
            ++*this;
            return t;
        }
        friend constexpr bool operator==(const iterator& a, const iterator& b) {
            return a.word_ == b.word_ && a.current_ == b.current_;
        }

    private:
        constexpr void skip() {
            while (current_ == 0 && ++word_ < kWords) current_ = (*words_)[word_];
            if (word_ >= kWords) {
                word_ = kWords;
                current_ = 0;
            }
        }
        const std::array<std::uint64_t, kWords>* words_ = nullptr;
        std::size_t word_ = kWords;
        std::uint64_t current_ = 0;
    };

    [[nodiscard]] constexpr iterator begin() const { return iterator(&words_, 0); }
    [[nodiscard]] constexpr iterator end() const { return iterator(&words_, kWords); }

private:
    static constexpr std::uint64_t bit(VertexId v) { return std::uint64_t{1} << (v & 63); }
    std::array<std::uint64_t, kWords> words_{};
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace mb
