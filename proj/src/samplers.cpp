#include "bpfourier/samplers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bpfourier/errors.hpp"
#include "bpfourier/gf2m.hpp"

namespace bpf {

static int ceil_log2_ratio(std::size_t n, double log2_inv_x) {
    // ceil(log2(n) + log2(1/x)), guarded against representation noise at
    // exact integers
    double v = std::log2(double(n)) + log2_inv_x;
    double c = std::ceil(v - 1e-9);
    return int(c);
}

int small_bias_field_size_log2(std::size_t n, double log2_inv_mu) {
    if (n == 0) throw std::invalid_argument("small_bias: n must be >= 1");
    return std::max(1, ceil_log2_ratio(n, log2_inv_mu)) + 1;
}

int small_bias_field_size(std::size_t n, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("small_bias: mu must be in (0,1)");
    return small_bias_field_size_log2(n, -std::log2(mu));
}

std::uint64_t small_bias_seed_len(std::size_t n, double mu) {
    return 2 * std::uint64_t(small_bias_field_size(n, mu));
}

static void check_field(int m, const char* who) {
    if (m > 64)
        throw field_overflow(std::string(who) + ": requires GF(2^" + std::to_string(m) +
                             "), supported range is m <= 64");
}

BitString small_bias_log2(std::size_t n, double log2_inv_mu, SeedStream& seed) {
    const int m = small_bias_field_size_log2(n, log2_inv_mu);
    check_field(m, "small_bias");
    GF2m f(m);
    std::uint64_t a = seed.read_word(m);
    std::uint64_t b = seed.read_word(m);
    BitString out(n);
    std::uint64_t c = b;  // a^i * b, starting at i = 0
    for (std::size_t i = 0; i < n; ++i) {
        out.set(i, c & 1);
        c = f.mul(c, a);
    }
    return out;
}

BitString small_bias(std::size_t n, double mu, SeedStream& seed) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("small_bias: mu must be in (0,1)");
    return small_bias_log2(n, -std::log2(mu), seed);
}

BitSampler small_bias_sampler(std::size_t n, double mu) {
    BitSampler s;
    s.n = n;
    s.seed_bits = small_bias_seed_len(n, mu);
    s.draw = [n, mu](SeedStream& st) { return small_bias(n, mu, st); };
    return s;
}

int kwise_field_size(std::size_t n, int d) {
    if (n == 0) throw std::invalid_argument("kwise_bits: n must be >= 1");
    std::size_t points = n * std::size_t(d);
    int m = 1;
    while ((std::uint64_t(1) << m) < points) {
        ++m;
        if (m > 64) throw field_overflow("kwise_bits: n*d exceeds 2^64 evaluation points");
    }
    return m;
}

std::uint64_t kwise_seed_len(std::size_t n, int d, int k) {
    if (d < 0) throw std::invalid_argument("kwise_bits: d must be >= 0");
    if (k < 1) throw std::invalid_argument("kwise_bits: k must be >= 1");
    if (d == 0) return 0;  // p = 1, the all-ones mask
    return std::uint64_t(k) * std::uint64_t(d) * std::uint64_t(kwise_field_size(n, d));
}

BitString kwise_bits(std::size_t n, int d, int k, SeedStream& seed) {
    kwise_seed_len(n, d, k);  // validates
    if (d == 0) return BitString::ones(n);
    const int m = kwise_field_size(n, d);
    GF2m f(m);
    const std::size_t deg = std::size_t(k) * std::size_t(d);  // number of coefficients
    std::vector<std::uint64_t> coeff(deg);
    for (auto& c : coeff) c = seed.read_word(m);
    BitString out(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool all = true;
        for (int j = 0; j < d && all; ++j) {
            std::uint64_t x = std::uint64_t(i) * d + j;  // evaluation point
            // Horner
            std::uint64_t v = 0;
            for (std::size_t c = deg; c-- > 0;) v = f.mul(v, x) ^ coeff[c];
            all = v & 1;
        }
        out.set(i, all);
    }
    return out;
}

BitSampler kwise_sampler(std::size_t n, int d, int k) {
    BitSampler s;
    s.n = n;
    s.seed_bits = kwise_seed_len(n, d, k);
    s.draw = [n, d, k](SeedStream& st) { return kwise_bits(n, d, k, st); };
    return s;
}

static double almost_kwise_log2_inv_mu_base(int d, int k, double log2_inv_delta) {
    // mu_base = delta * 2^(-kd/2), clamped to at most 1/2
    double log2_inv = log2_inv_delta + 0.5 * double(k) * double(d);
    return std::max(log2_inv, 1.0);
}

int almost_kwise_field_size_log2(std::size_t n, int d, int k, double log2_inv_delta) {
    if (d < 1) throw std::invalid_argument("almost_kwise_mask: d must be >= 1");
    return small_bias_field_size_log2(n * std::size_t(d),
                                      almost_kwise_log2_inv_mu_base(d, k, log2_inv_delta));
}

int almost_kwise_field_size(std::size_t n, int d, int k, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("almost_kwise_mask: delta must be > 0");
    return almost_kwise_field_size_log2(n, d, k, -std::log2(delta));
}

std::uint64_t almost_kwise_seed_len(std::size_t n, int d, int k, double delta) {
    return 2 * std::uint64_t(almost_kwise_field_size(n, d, k, delta)) + std::uint64_t(d);
}

BitString almost_kwise_mask_log2(std::size_t n, int d, int k, double log2_inv_delta,
                                 SeedStream& seed) {
    if (d < 1) throw std::invalid_argument("almost_kwise_mask: d must be >= 1");
    const int m = almost_kwise_field_size_log2(n, d, k, log2_inv_delta);
    check_field(m, "almost_kwise_mask");
    const std::size_t nd = n * std::size_t(d);
    BitString x = small_bias_log2(nd, almost_kwise_log2_inv_mu_base(d, k, log2_inv_delta), seed);
    std::uint64_t y = seed.read_word(d);
    BitString out(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool all = true;
        for (int j = 0; j < d && all; ++j)
            all = x.get(i * std::size_t(d) + j) ^ ((y >> j) & 1);
        out.set(i, all);
    }
    return out;
}

BitString almost_kwise_mask(std::size_t n, int d, int k, double delta, SeedStream& seed) {
    if (!(delta > 0.0)) throw std::invalid_argument("almost_kwise_mask: delta must be > 0");
    return almost_kwise_mask_log2(n, d, k, -std::log2(delta), seed);
}

BitSampler almost_kwise_sampler(std::size_t n, int d, int k, double delta) {
    BitSampler s;
    s.n = n;
    s.seed_bits = almost_kwise_seed_len(n, d, k, delta);
    s.draw = [n, d, k, delta](SeedStream& st) { return almost_kwise_mask(n, d, k, delta, st); };
    return s;
}

double chernoff_bound(double ell, int k, double zeta, double delta) {
    if (k < 2) throw std::invalid_argument("chernoff_bound: k must be >= 2");
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::invalid_argument("chernoff_bound: zeta must be in (0,1)");
    double first = std::pow(double(k) * k / (4.0 * ell * zeta * zeta), double(k / 2));
    double second = delta / std::pow(zeta, double(k));
    return first + second;
}

}  // namespace bpf
