#pragma once

#include <cstdint>
#include <functional>

#include "bpfourier/bitstring.hpp"
#include "bpfourier/seedstream.hpp"

namespace bpf {

// A deterministic distribution over {0,1}^n: a pure function of seed_bits
// seed bits. Enumerating all seeds enumerates the distribution.
struct BitSampler {
    std::size_t n = 0;
    std::uint64_t seed_bits = 0;
    std::function<BitString(SeedStream&)> draw;

    BitString draw_from_u64(std::uint64_t seed) const {
        SeedStream s(BitString::from_u64(std::size_t(seed_bits), seed));
        return draw(s);
    }
};

// --- small-bias strings (power construction over GF(2^m)) ---------------
//
// m = ceil(log2(n/mu)) + 1; the seed is (a, b) in GF(2^m)^2 and bit i is the
// low coefficient of a^i * b. Under a uniform seed the output has bias at
// most (n-1)/2^m <= mu/2.

int small_bias_field_size(std::size_t n, double mu);
std::uint64_t small_bias_seed_len(std::size_t n, double mu);
BitString small_bias(std::size_t n, double mu, SeedStream& seed);
BitSampler small_bias_sampler(std::size_t n, double mu);

// log-space variants, used by the generator so that seed accounting and
// drawing share one field-size computation: log2_inv_mu = log2(1/mu).
// The field-size function may return m > 64 (drawing then refuses).
int small_bias_field_size_log2(std::size_t n, double log2_inv_mu);
BitString small_bias_log2(std::size_t n, double log2_inv_mu, SeedStream& seed);

// --- exact k-wise independent bits with expectation 2^-d ----------------
//
// Evaluates a uniformly seeded polynomial of degree kd-1 over GF(2^m) with
// 2^m >= n*d at n*d fixed points, keeps the low bit of each value, and ANDs
// consecutive blocks of d bits. Consumes k*d*m seed bits.

int kwise_field_size(std::size_t n, int d);
std::uint64_t kwise_seed_len(std::size_t n, int d, int k);
BitString kwise_bits(std::size_t n, int d, int k, SeedStream& seed);
BitSampler kwise_sampler(std::size_t n, int d, int k);

// --- delta-almost k-wise independent bits with expectation 2^-d ---------
//
// X in {0,1}^(nd) is a small-bias string with bias delta * 2^(-kd/2)
// (clamped below 1/2 for degenerate delta); Y in {0,1}^d is uniform;
// Z = X xor (Y,...,Y); output bit i is the AND of block i of Z. Marginals
// are exactly 2^-d; any k output bits are delta-close to independent.
// Consumes 2*m_base + d seed bits.

int almost_kwise_field_size(std::size_t n, int d, int k, double delta);
std::uint64_t almost_kwise_seed_len(std::size_t n, int d, int k, double delta);
BitString almost_kwise_mask(std::size_t n, int d, int k, double delta, SeedStream& seed);
BitSampler almost_kwise_sampler(std::size_t n, int d, int k, double delta);

// log-space variants: log2_inv_delta = log2(1/delta).
int almost_kwise_field_size_log2(std::size_t n, int d, int k, double log2_inv_delta);
BitString almost_kwise_mask_log2(std::size_t n, int d, int k, double log2_inv_delta,
                                 SeedStream& seed);

// Tail bound for a sum of ell delta-almost k-wise independent [0,1]
// variables deviating by ell*zeta: (k^2/(4 ell zeta^2))^floor(k/2) + delta/zeta^k.
double chernoff_bound(double ell, int k, double zeta, double delta);

}  // namespace bpf
