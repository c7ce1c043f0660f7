#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace desdiag {

/// Fixed-width bit vector of arbitrary size.
///
/// Used for three kinds of sets that all want cheap boolean algebra:
/// state sets, observable event sets, and per-state signatures. Unlike
/// a machine word, the width is not bounded, so signatures stay exact
/// for any number of observable events.
///
/// Bits beyond size() are always zero; binary operations require both
/// operands to have the same size. Ordering compares the bit patterns
/// as unsigned integers (bit 0 least significant).
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t nbits) : size_(nbits), words_(word_count(nbits), 0) {}

    /// All bits below `nbits` set.
    static Bitset full(std::size_t nbits) {
        Bitset b(nbits);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.mask_tail();
        return b;
    }

    static Bitset of(std::size_t nbits, std::initializer_list<std::size_t> positions) {
        Bitset b(nbits);
        for (std::size_t p : positions) b.set(p);
        return b;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t pos) const {
        assert(pos < size_);
        return (words_[pos >> 6] >> (pos & 63)) & 1u;
    }

    void set(std::size_t pos) {
        assert(pos < size_);
        words_[pos >> 6] |= std::uint64_t{1} << (pos & 63);
    }

    void reset(std::size_t pos) {
        assert(pos < size_);
        words_[pos >> 6] &= ~(std::uint64_t{1} << (pos & 63));
    }

    /// Copy with one extra / one fewer member.
    Bitset with(std::size_t pos) const {
        Bitset b(*this);
        b.set(pos);
        return b;
    }
    Bitset without(std::size_t pos) const {
        Bitset b(*this);
        b.reset(pos);
        return b;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w != 0) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& other) {
        assert(size_ == other.size_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& other) {
        assert(size_ == other.size_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    /// Set difference: bits of *this that are not in `other`.
    Bitset& operator-=(const Bitset& other) {
        assert(size_ == other.size_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    /// Complement within the fixed width.
    Bitset complement() const {
        Bitset b(*this);
        for (auto& w : b.words_) w = ~w;
        b.mask_tail();
        return b;
    }

    bool is_subset_of(const Bitset& other) const {
        assert(size_ == other.size_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool operator==(const Bitset& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    /// Numeric order on the bit pattern (most significant word first).
    std::strong_ordering operator<=>(const Bitset& other) const {
        assert(size_ == other.size_);
        for (std::size_t i = words_.size(); i-- > 0;) {
            if (words_[i] != other.words_[i])
                return words_[i] < other.words_[i] ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    /// Visit set positions in ascending order.
    template <class F>
    void for_each(F&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                fn(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> positions() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t p) { out.push_back(p); });
        return out;
    }

    /// Low 64 bits of the pattern. Convenient for small widths.
    std::uint64_t to_uint64() const { return words_.empty() ? 0 : words_[0]; }

private:
    static std::size_t word_count(std::size_t nbits) { return (nbits + 63) / 64; }

    void mask_tail() {
        const std::size_t used = size_ & 63;
        if (used != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << used) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace desdiag
