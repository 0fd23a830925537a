#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bowtie {

/// Index of an element in a finite ring or module.
using Elem = std::uint32_t;

/**
 * Dense subset of {0, ..., universe-1}, stored one bit per element.
 *
 * Ordering is lexicographic on the bit sequence (b_0, b_1, ...) with
 * absent < present, so {1} < {0} and {0} < {0,1}.
 */
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static ElementSet full(std::size_t universe) {
        ElementSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.set(static_cast<Elem>(i));
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool test(Elem i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(Elem i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(Elem i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    bool is_full() const { return count() == universe_; }

    bool subset_of(const ElementSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }
    bool intersects(const ElementSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    ElementSet& operator|=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ElementSet& operator&=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    /// Set difference.
    ElementSet& operator-=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
    friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

    /// Smallest member, or universe() when empty.
    std::size_t first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return universe_;
    }

    template <typename F>
    void for_each(F&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                auto bit = std::countr_zero(w);
                fn(static_cast<Elem>(i * 64 + static_cast<std::size_t>(bit)));
                w &= w - 1;
            }
        }
    }

    std::vector<Elem> members() const {
        std::vector<Elem> out;
        out.reserve(count());
        for_each([&](Elem e) { out.push_back(e); });
        return out;
    }

    friend bool operator==(const ElementSet&, const ElementSet&) = default;

    friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) {
        if (a.universe_ != b.universe_) return a.universe_ <=> b.universe_;
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            auto diff = a.words_[i] ^ b.words_[i];
            if (!diff) continue;
            auto low = std::uint64_t{1} << std::countr_zero(diff);
            return (a.words_[i] & low) ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return std::strong_ordering::equal;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace bowtie
