#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bpf {

// Fixed-length bit vector. Bits are 0-indexed in code; the hex encoding packs
// bit i into byte i/8 at position i%8 (first bit = lowest bit of first byte).
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitString zeros(std::size_t n) { return BitString(n); }
    static BitString ones(std::size_t n);
    // bit i = (v >> i) & 1, for n <= 64
    static BitString from_u64(std::size_t n, std::uint64_t v);
    // "0101..." reading left to right as bit 0, bit 1, ...
    static BitString from_string(std::string_view s);
    // inverse of to_hex(); hex must supply at least ceil(n/8) bytes
    static BitString from_hex(std::size_t n, std::string_view hex);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool b) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    std::size_t weight() const;
    std::uint64_t to_u64() const;  // requires n <= 64
    std::string to_string() const;
    std::string to_hex() const;

    BitString operator^(const BitString& o) const;
    bool operator==(const BitString& o) const;
    bool operator!=(const BitString& o) const { return !(*this == o); }

    // true iff every set bit of *this is also set in t
    bool subset_of(const BitString& t) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace bpf
