#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "qec/zmod.hpp"

namespace qec {

/// Runtime-sized bitset. Bit i lives at word i/64, position i%64; bits past
/// size() in the last word are always zero.
class DynBitset {
public:
    static constexpr u64 npos = std::numeric_limits<u64>::max();

    DynBitset() = default;
    explicit DynBitset(u64 nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    u64 size() const { return nbits_; }
    u64 word_count() const { return w_.size(); }

    bool test(u64 i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(u64 i) { w_[i >> 6] |= u64{1} << (i & 63); }
    void reset(u64 i) { w_[i >> 6] &= ~(u64{1} << (i & 63)); }

    u64 word(u64 wi) const { return w_[wi]; }
    void set_word(u64 wi, u64 value) { w_[wi] = value & word_mask(wi); }

    /// Mask of the valid bits of word wi (all-ones except possibly the tail).
    u64 word_mask(u64 wi) const {
        if (wi + 1 < w_.size() || (nbits_ & 63) == 0) return ~u64{0};
        return (u64{1} << (nbits_ & 63)) - 1;
    }

    u64 count() const {
        u64 c = 0;
        for (u64 w : w_) c += std::popcount(w);
        return c;
    }

    u64 find_first() const {
        for (u64 wi = 0; wi < w_.size(); ++wi)
            if (w_[wi]) return wi * 64 + std::countr_zero(w_[wi]);
        return npos;
    }

    bool operator==(const DynBitset& o) const = default;

    DynBitset& operator&=(const DynBitset& o) {
        for (u64 i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    /// In-place intersection with the complement of o (restricted to size()).
    DynBitset& and_not(const DynBitset& o) {
        for (u64 i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

private:
    u64 nbits_ = 0;
    std::vector<u64> w_;
};

}  // namespace qec
