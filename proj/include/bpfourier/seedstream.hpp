#pragma once

#include <cstdint>
#include <string>

#include "bpfourier/bitstring.hpp"
#include "bpfourier/errors.hpp"

namespace bpf {

// Deterministic cursor over a seed bit string. Every read advances the
// cursor by exactly the requested amount; reading past the end throws.
class SeedStream {
public:
    explicit SeedStream(BitString bits) : bits_(std::move(bits)) {}

    std::size_t consumed() const { return cursor_; }
    std::size_t remaining() const { return bits_.size() - cursor_; }

    bool read_bit() {
        require(1);
        return bits_.get(cursor_++);
    }

    // count <= 64; bit j of the result is seed bit cursor+j
    std::uint64_t read_word(int count) {
        require(std::size_t(count));
        std::uint64_t v = 0;
        for (int j = 0; j < count; ++j)
            if (bits_.get(cursor_ + j)) v |= std::uint64_t(1) << j;
        cursor_ += count;
        return v;
    }

    BitString read_bitstring(std::size_t count) {
        require(count);
        BitString r(count);
        for (std::size_t j = 0; j < count; ++j) r.set(j, bits_.get(cursor_ + j));
        cursor_ += count;
        return r;
    }

    void skip(std::size_t count) {
        require(count);
        cursor_ += count;
    }

private:
    void require(std::size_t count) const {
        if (count > bits_.size() - cursor_)
            throw seed_exhausted("seed exhausted: need " + std::to_string(count) +
                                 " more bits at offset " + std::to_string(cursor_) + " of " +
                                 std::to_string(bits_.size()));
    }

    BitString bits_;
    std::size_t cursor_ = 0;
};

}  // namespace bpf
