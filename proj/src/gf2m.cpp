#include "bpfourier/gf2m.hpp"

#include <stdexcept>
#include <string>

#include "bpfourier/errors.hpp"

namespace bpf {

// Low bits (below x^m) of the modulus for m = 1..64: the smallest trinomial
// x^m + x^a + 1, else the smallest pentanomial x^m + x^a + x^b + x^c + 1.
static const std::uint64_t kPolyLow[65] = {
    0,
    0x0000000000000001ULL,  // m=1: x + 1
    0x0000000000000003ULL,  // m=2
    0x0000000000000003ULL,  // m=3
    0x0000000000000003ULL,  // m=4
    0x0000000000000005ULL,  // m=5
    0x0000000000000003ULL,  // m=6
    0x0000000000000003ULL,  // m=7
    0x000000000000001bULL,  // m=8
    0x0000000000000003ULL,  // m=9
    0x0000000000000009ULL,  // m=10
    0x0000000000000005ULL,  // m=11
    0x0000000000000009ULL,  // m=12
    0x000000000000001bULL,  // m=13
    0x0000000000000021ULL,  // m=14
    0x0000000000000003ULL,  // m=15
    0x000000000000002bULL,  // m=16
    0x0000000000000009ULL,  // m=17
    0x0000000000000009ULL,  // m=18
    0x0000000000000027ULL,  // m=19
    0x0000000000000009ULL,  // m=20
    0x0000000000000005ULL,  // m=21
    0x0000000000000003ULL,  // m=22
    0x0000000000000021ULL,  // m=23
    0x000000000000001bULL,  // m=24
    0x0000000000000009ULL,  // m=25
    0x000000000000001bULL,  // m=26
    0x0000000000000027ULL,  // m=27
    0x0000000000000003ULL,  // m=28
    0x0000000000000005ULL,  // m=29
    0x0000000000000003ULL,  // m=30
    0x0000000000000009ULL,  // m=31
    0x000000000000008dULL,  // m=32
    0x0000000000000401ULL,  // m=33
    0x0000000000000081ULL,  // m=34
    0x0000000000000005ULL,  // m=35
    0x0000000000000201ULL,  // m=36
    0x0000000000000053ULL,  // m=37
    0x0000000000000063ULL,  // m=38
    0x0000000000000011ULL,  // m=39
    0x0000000000000039ULL,  // m=40
    0x0000000000000009ULL,  // m=41
    0x0000000000000081ULL,  // m=42
    0x0000000000000059ULL,  // m=43
    0x0000000000000021ULL,  // m=44
    0x000000000000001bULL,  // m=45
    0x0000000000000003ULL,  // m=46
    0x0000000000000021ULL,  // m=47
    0x000000000000002dULL,  // m=48
    0x0000000000000201ULL,  // m=49
    0x000000000000001dULL,  // m=50
    0x000000000000004bULL,  // m=51
    0x0000000000000009ULL,  // m=52
    0x0000000000000047ULL,  // m=53
    0x0000000000000201ULL,  // m=54
    0x0000000000000081ULL,  // m=55
    0x0000000000000095ULL,  // m=56
    0x0000000000000011ULL,  // m=57
    0x0000000000080001ULL,  // m=58
    0x0000000000000095ULL,  // m=59
    0x0000000000000003ULL,  // m=60
    0x0000000000000027ULL,  // m=61
    0x0000000020000001ULL,  // m=62
    0x0000000000000003ULL,  // m=63
    0x000000000000001bULL,  // m=64
};

std::uint64_t GF2m::modulus_low_bits(int m) {
    if (m < 1 || m > 64)
        throw field_overflow("GF(2^m): m = " + std::to_string(m) + " outside supported [1,64]");
    return kPolyLow[m];
}

GF2m::GF2m(int m) : m_(m), poly_(modulus_low_bits(m)) {
    mask_ = (m == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << m) - 1);
}

std::uint64_t GF2m::mul(std::uint64_t a, std::uint64_t b) const {
    a &= mask_;
    b &= mask_;
    std::uint64_t r = 0;
    const std::uint64_t top = std::uint64_t(1) << (m_ - 1);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        bool carry = a & top;
        a = (a << 1) & mask_;
        if (carry) a ^= poly_;
    }
    return r;
}

std::uint64_t GF2m::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a &= mask_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t GF2m::inv(std::uint64_t a) const {
    if ((a & mask_) == 0) throw std::invalid_argument("GF(2^m): inverse of zero");
    if (m_ == 1) return 1;
    // a^(2^m - 2)
    std::uint64_t e = (mask_ - 1);
    if (m_ == 64) e = ~std::uint64_t(0) - 1;
    return pow(a, e);
}

}  // namespace bpf
