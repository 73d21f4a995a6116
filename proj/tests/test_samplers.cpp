#include <doctest.h>

#include <bit>
#include <cmath>
#include <map>

#include "bpfourier/errors.hpp"
#include "bpfourier/fourier.hpp"
#include "bpfourier/gf2m.hpp"
#include "bpfourier/samplers.hpp"
#include "bpfourier/seedstream.hpp"

using namespace bpf;

namespace {

// Independent irreducibility oracle (Rabin's test) for the field moduli,
// written against 128-bit polynomial arithmetic rather than the library's
// field routines.
using u128 = unsigned __int128;

int poly_deg(u128 p) {
    for (int i = 127; i >= 0; --i)
        if ((p >> i) & 1) return i;
    return -1;
}

u128 poly_mul(std::uint64_t a, std::uint64_t b) {
    u128 r = 0;
    for (int i = 0; i < 64; ++i)
        if ((b >> i) & 1) r ^= u128(a) << i;
    return r;
}

std::uint64_t poly_mod(u128 a, u128 f) {
    int df = poly_deg(f);
    for (int i = poly_deg(a); i >= df; --i)
        if ((a >> i) & 1) a ^= f << (i - df);
    return std::uint64_t(a);
}

std::uint64_t poly_gcd(u128 a, std::uint64_t b) {
    while (b) {
        std::uint64_t r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return std::uint64_t(a);
}

bool rabin_irreducible(int m, u128 f) {
    // x^(2^m) == x mod f
    std::uint64_t x_red = poly_mod(2, f);
    std::uint64_t x2i = x_red;
    for (int i = 0; i < m; ++i) x2i = poly_mod(poly_mul(x2i, x2i), f);
    if (x2i != x_red) return false;
    for (int q = 2; q <= m; ++q) {
        if (m % q) continue;
        bool prime = true;
        for (int t = 2; t * t <= q; ++t)
            if (q % t == 0) prime = false;
        if (!prime) continue;
        std::uint64_t h = 2;
        for (int i = 0; i < m / q; ++i) h = poly_mod(poly_mul(h, h), f);
        if (poly_gcd(f, h ^ 2ULL) != 1) return false;
    }
    return true;
}

BitString draw_all(const BitSampler& s, std::uint64_t seed) { return s.draw_from_u64(seed); }

}  // namespace

TEST_CASE("field modulus table is irreducible for every m") {
    for (int m = 1; m <= 64; ++m) {
        u128 f = (u128(1) << m) | GF2m::modulus_low_bits(m);
        CHECK_MESSAGE(rabin_irreducible(m, f), "m = ", m);
    }
    CHECK_THROWS_AS(GF2m::modulus_low_bits(65), field_overflow);
    CHECK_THROWS_AS(GF2m::modulus_low_bits(0), field_overflow);
}

TEST_CASE("field arithmetic") {
    for (int m : {1, 2, 3, 8, 13, 16, 31, 32, 33, 47, 52, 63, 64}) {
        GF2m f(m);
        Rng rng(m);
        for (int trial = 0; trial < 40; ++trial) {
            std::uint64_t a = rng.next() & f.mask();
            std::uint64_t b = rng.next() & f.mask();
            std::uint64_t c = rng.next() & f.mask();
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
            if (a) CHECK(f.mul(a, f.inv(a)) == 1);
        }
        CHECK_THROWS_AS(f.inv(0), std::invalid_argument);
    }
    // exhaustive inverse check in a small field
    GF2m f4(4);
    for (std::uint64_t a = 1; a < 16; ++a) CHECK(f4.mul(a, f4.inv(a)) == 1);
}

TEST_CASE("seed stream accounting") {
    SeedStream s(BitString::from_string("1011001110"));
    CHECK(s.read_bit() == true);
    CHECK(s.read_word(3) == 0b110);  // bits 0,1,1 -> little-endian word
    CHECK(s.consumed() == 4);
    BitString r = s.read_bitstring(4);
    CHECK(r.to_string() == "0011");
    CHECK(s.remaining() == 2);
    CHECK_THROWS_AS(s.read_word(3), seed_exhausted);
    CHECK(s.consumed() == 8);  // failed read consumes nothing
    s.skip(2);
    CHECK(s.remaining() == 0);
}

TEST_CASE("small_bias construction") {
    // seed length formula
    CHECK(small_bias_seed_len(8, 0.25) == 2 * 6);
    CHECK(small_bias_field_size(8, 0.25) == 6);
    CHECK(small_bias_field_size(100, 0.1) == 11);  // ceil(log2(1000)) + 1

    // determinism and exact consumption
    BitSampler s = small_bias_sampler(12, 0.25);
    SeedStream a(BitString::from_u64(std::size_t(s.seed_bits), 0x2f3a));
    SeedStream b(BitString::from_u64(std::size_t(s.seed_bits), 0x2f3a));
    CHECK(s.draw(a) == s.draw(b));
    CHECK(a.consumed() == s.seed_bits);

    // all-zero a, b give the zero string; the sampler is nontrivial elsewhere
    CHECK(draw_all(s, 0).weight() == 0);
}

TEST_CASE("small_bias exhaustive bias is within the bound") {
    for (std::size_t n : {4, 8, 10}) {
        for (double mu : {0.5, 0.25, 0.125}) {
            BitSampler s = small_bias_sampler(n, mu);
            double b = bias_of(s);
            CHECK(b <= mu);
            // the construction even satisfies the pre-slack bound (n-1)/2^m
            int m = small_bias_field_size(n, mu);
            CHECK(b <= double(n - 1) / std::exp2(m) + 1e-12);
        }
    }
}

TEST_CASE("kwise_bits marginals and joints are exactly product-form") {
    struct Case {
        std::size_t n;
        int d, k;
    };
    for (Case c : {Case{4, 1, 2}, Case{4, 2, 2}, Case{3, 1, 3}, Case{5, 2, 1}}) {
        BitSampler s = kwise_sampler(c.n, c.d, c.k);
        REQUIRE(s.seed_bits <= 20);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;

        // joint counts over every k-subset of coordinates
        for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << c.n); ++sub) {
            if (std::popcount(sub) != c.k) continue;
            std::map<std::uint64_t, std::uint64_t> joint;
            for (std::uint64_t v = 0; v < seeds; ++v) {
                BitString out = draw_all(s, v);
                std::uint64_t key = 0;
                int pos = 0;
                for (std::size_t i = 0; i < c.n; ++i)
                    if ((sub >> i) & 1) key |= std::uint64_t(out.get(i)) << pos++;
                joint[key] += 1;
            }
            // exact product form: count * 2^(dk) == expected_pattern * seeds
            for (std::uint64_t key = 0; key < (std::uint64_t(1) << c.k); ++key) {
                // numerator of prod(p or 1-p) with denominator 2^(dk)
                u128 num = 1;
                for (std::uint64_t i = 0; i < std::uint64_t(c.k); ++i)
                    num *= ((key >> i) & 1) ? 1 : ((std::uint64_t(1) << c.d) - 1);
                u128 lhs = u128(joint[key]) << (std::uint64_t(c.d) * c.k);
                u128 rhs = num * seeds;
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("kwise_bits degenerate d=0 gives the all-ones mask") {
    BitSampler s = kwise_sampler(6, 0, 1);
    CHECK(s.seed_bits == 0);
    CHECK(draw_all(s, 0) == BitString::ones(6));
}

TEST_CASE("almost_kwise_mask marginals are exactly 2^-d") {
    struct Case {
        std::size_t n;
        int d, k;
        double delta;
    };
    for (Case c : {Case{4, 2, 2, 0.5}, Case{4, 1, 2, 0.25}, Case{3, 2, 3, 1.5}}) {
        BitSampler s = almost_kwise_sampler(c.n, c.d, c.k, c.delta);
        REQUIRE(s.seed_bits <= 22);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
        std::vector<std::uint64_t> ones(c.n, 0);
        for (std::uint64_t v = 0; v < seeds; ++v) {
            BitString out = draw_all(s, v);
            for (std::size_t i = 0; i < c.n; ++i) ones[i] += out.get(i);
        }
        for (std::size_t i = 0; i < c.n; ++i)
            CHECK(ones[i] * (std::uint64_t(1) << c.d) == seeds);
    }
}

TEST_CASE("almost_kwise_mask k-wise statistical distance is within delta") {
    const std::size_t n = 4;
    const int d = 2, k = 2;
    const double delta = 0.5;
    BitSampler s = almost_kwise_sampler(n, d, k, delta);
    REQUIRE(s.seed_bits <= 22);
    const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
    const double p = 0.25;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double joint[2][2] = {{0, 0}, {0, 0}};
            for (std::uint64_t v = 0; v < seeds; ++v) {
                BitString out = draw_all(s, v);
                joint[out.get(i)][out.get(j)] += 1.0;
            }
            double dist = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double prod = (a ? p : 1 - p) * (b ? p : 1 - p);
                    double diff = joint[a][b] / double(seeds) - prod;
                    if (diff > 0) dist += diff;  // total variation
                }
            CHECK(dist <= delta + 1e-12);
        }
}

TEST_CASE("sampler seed exhaustion") {
    SeedStream tiny(BitString::from_string("101"));
    CHECK_THROWS_AS(small_bias(8, 0.25, tiny), seed_exhausted);
    SeedStream tiny2(BitString::from_string("10110"));
    CHECK_THROWS_AS(kwise_bits(16, 2, 3, tiny2), seed_exhausted);
}

TEST_CASE("chernoff bound formula") {
    CHECK(chernoff_bound(100, 2, 0.1, 0.0) == doctest::Approx(1.0));
    // floor(k/2) in the exponent
    CHECK(chernoff_bound(100, 3, 0.1, 0.0) == doctest::Approx(9.0 / 4.0));
    CHECK(chernoff_bound(100, 2, 0.1, 0.01) == doctest::Approx(1.0 + 0.01 / 0.01));
    CHECK_THROWS_AS(chernoff_bound(10, 1, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_bound(10, 2, 0.0, 0.0), std::invalid_argument);

    // monotone decreasing in ell
    double prev = 1e300;
    for (double ell : {10.0, 100.0, 1000.0}) {
        double b = chernoff_bound(ell, 4, 0.2, 0.0);
        CHECK(b <= prev);
        prev = b;
    }
}

TEST_CASE("chernoff bound dominates exact enumerable tails") {
    // exact k-wise sampler
    for (int k : {2, 4}) {
        BitSampler s = kwise_sampler(8, 1, k);
        REQUIRE(s.seed_bits <= 16);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
        double mean = 8 * 0.5;
        for (double zeta : {0.125, 0.25, 0.5}) {
            std::uint64_t bad = 0;
            for (std::uint64_t v = 0; v < seeds; ++v)
                if (std::abs(double(draw_all(s, v).weight()) - mean) >= 8 * zeta) ++bad;
            CHECK(double(bad) / double(seeds) <= chernoff_bound(8, k, zeta, 0.0) + 1e-12);
        }
    }
    // almost k-wise sampler with its delta
    BitSampler s = almost_kwise_sampler(4, 1, 2, 0.25);
    REQUIRE(s.seed_bits <= 22);
    const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
    double mean = 4 * 0.5;
    for (double zeta : {0.25, 0.5}) {
        std::uint64_t bad = 0;
        for (std::uint64_t v = 0; v < seeds; ++v)
            if (std::abs(double(draw_all(s, v).weight()) - mean) >= 4 * zeta) ++bad;
        CHECK(double(bad) / double(seeds) <= chernoff_bound(4, 2, zeta, 0.25) + 1e-12);
    }
}

TEST_CASE("exact consumption matches the documented formulas") {
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + rng.below(10);
        BitSampler sb = small_bias_sampler(n, 0.25);
        BitSampler kw = kwise_sampler(n, 2, 3);
        BitSampler ak = almost_kwise_sampler(n, 2, 3, 0.125);
        for (BitSampler* s : {&sb, &kw, &ak}) {
            BitString bits(std::size_t(s->seed_bits) + 7);
            for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, rng.below(2));
            SeedStream st(bits);
            BitString out = s->draw(st);
            CHECK(out.size() == n);
            CHECK(st.consumed() == s->seed_bits);
        }
    }
}
