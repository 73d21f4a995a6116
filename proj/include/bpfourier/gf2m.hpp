#pragma once

#include <cstdint>

namespace bpf {

// Binary field GF(2^m), m in [1,64]. Elements are coefficient vectors packed
// into a uint64 (bit j = coefficient of x^j). The modulus for each m is a
// fixed minimal-weight irreducible polynomial (smallest trinomial, else
// smallest pentanomial); the table is verified by an independent
// irreducibility test in the test suite.
class GF2m {
public:
    explicit GF2m(int m);

    int m() const { return m_; }
    std::uint64_t mask() const { return mask_; }
    // low bits of the modulus (the x^m term is implicit)
    std::uint64_t modulus_low() const { return poly_; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;  // a != 0

    static std::uint64_t modulus_low_bits(int m);

private:
    int m_;
    std::uint64_t poly_;
    std::uint64_t mask_;
};

}  // namespace bpf
