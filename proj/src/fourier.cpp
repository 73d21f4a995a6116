#include "bpfourier/fourier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bpfourier/errors.hpp"

namespace bpf {

double matrix_norm(const MatrixW& m, Norm norm) {
    return norm == Norm::spectral ? spectral_norm(m) : m.frobenius_norm();
}

int character(const BitString& s, const BitString& x) {
    if (s.size() != x.size()) throw std::invalid_argument("character: length mismatch");
    std::size_t overlap = 0;
    const auto& sw = s.words();
    const auto& xw = x.words();
    for (std::size_t i = 0; i < sw.size(); ++i) overlap += std::popcount(sw[i] & xw[i]);
    return (overlap & 1) ? -1 : 1;
}

MatrixW coefficient(const BranchingProgram& p, const BitString& s) {
    if (s.size() != p.length()) throw std::invalid_argument("coefficient: index length mismatch");
    MatrixW r = MatrixW::identity(p.w);
    for (std::size_t i = 0; i < p.layers.size(); ++i)
        r = r * (s.get(p.order[i]) ? p.layers[i].diff_matrix() : p.layers[i].avg_matrix());
    return r;
}

static void check_enum_cap(std::size_t bits, int cap_bits, const char* who) {
    if (int(bits) > cap_bits)
        throw cap_exceeded(std::string(who) + ": would enumerate 2^" + std::to_string(bits) +
                           " cases (cap 2^" + std::to_string(cap_bits) + ")");
}

MatrixW coefficient_bruteforce(const MatrixFn& fn, const BitString& s, int cap_bits) {
    if (s.size() != fn.n)
        throw std::invalid_argument("coefficient_bruteforce: index length mismatch");
    check_enum_cap(fn.n, cap_bits, "coefficient_bruteforce");
    MatrixW acc(fn.w);
    const std::uint64_t total = std::uint64_t(1) << fn.n;
    for (std::uint64_t v = 0; v < total; ++v) {
        BitString x = BitString::from_u64(fn.n, v);
        MatrixW m = fn(x);
        if (character(s, x) > 0) acc += m;
        else acc += m.scaled(-1.0);
    }
    acc *= 1.0 / double(total);
    return acc;
}

std::vector<MatrixW> all_coefficients_bruteforce(const MatrixFn& fn, int cap_bits) {
    check_enum_cap(fn.n, cap_bits, "all_coefficients_bruteforce");
    const std::uint64_t total = std::uint64_t(1) << fn.n;
    std::vector<MatrixW> table;
    table.reserve(total);
    for (std::uint64_t v = 0; v < total; ++v) table.push_back(fn(BitString::from_u64(fn.n, v)));

    std::vector<MatrixW> out(total, MatrixW(fn.w));
    for (std::uint64_t sv = 0; sv < total; ++sv) {
        MatrixW& acc = out[sv];
        for (std::uint64_t v = 0; v < total; ++v) {
            bool neg = std::popcount(sv & v) & 1;
            const auto& src = table[v].data();
            auto& dst = acc.data();
            if (neg)
                for (std::size_t e = 0; e < dst.size(); ++e) dst[e] -= src[e];
            else
                for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += src[e];
        }
        acc *= 1.0 / double(total);
    }
    return out;
}

static void norms_rec(const std::vector<Layer>& layers, std::size_t i, std::uint64_t sv,
                      const MatrixW& prefix, Norm norm, std::vector<double>& out) {
    if (i == layers.size()) {
        out[sv] = matrix_norm(prefix, norm);
        return;
    }
    norms_rec(layers, i + 1, sv, prefix * layers[i].avg_matrix(), norm, out);
    norms_rec(layers, i + 1, sv | (std::uint64_t(1) << i), prefix * layers[i].diff_matrix(),
              norm, out);
}

std::vector<double> coefficient_norms(const BranchingProgram& p, Norm norm, int cap_bits) {
    check_enum_cap(p.length(), cap_bits, "coefficient_norms");
    std::vector<double> out(std::uint64_t(1) << p.length(), 0.0);
    norms_rec(p.layers, 0, 0, MatrixW::identity(p.w), norm, out);
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    const std::uint64_t cap = ~std::uint64_t(0) >> 1;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (r > cap / (n - k + i)) return cap;
        r = r * (n - k + i) / i;
    }
    return r;
}

static void level_rec(const std::vector<Layer>& layers, std::size_t i, int remaining,
                      const MatrixW& prefix, Norm norm, double& sum, std::uint64_t& count) {
    if (remaining == 0) {
        MatrixW m = prefix;
        for (std::size_t j = i; j < layers.size(); ++j) m = m * layers[j].avg_matrix();
        sum += matrix_norm(m, norm);
        ++count;
        return;
    }
    if (layers.size() - i < std::size_t(remaining)) return;
    level_rec(layers, i + 1, remaining, prefix * layers[i].avg_matrix(), norm, sum, count);
    level_rec(layers, i + 1, remaining - 1, prefix * layers[i].diff_matrix(), norm, sum, count);
}

MassReport level_mass(const BranchingProgram& p, int k, Norm norm, std::uint64_t term_cap) {
    if (k < 0 || std::size_t(k) > p.length())
        throw std::invalid_argument("level_mass: k out of range");
    std::uint64_t terms = binomial(p.length(), k);
    if (terms > term_cap)
        throw cap_exceeded("level_mass: C(n,k) = " + std::to_string(terms) + " exceeds cap " +
                           std::to_string(term_cap));
    MassReport rep;
    rep.n = p.length();
    rep.w = p.w;
    rep.k = k;
    rep.count = 0;
    rep.value = 0.0;
    level_rec(p.layers, 0, k, MatrixW::identity(p.w), norm, rep.value, rep.count);
    if (p.cls() != ProgClass::general && norm == Norm::spectral)
        rep.bound = std::pow(2.0 * p.w * p.w, k);
    else
        rep.bound = std::sqrt(double(p.w) * double(terms));
    return rep;
}

double total_mass(const BranchingProgram& p, Norm norm, int cap_bits) {
    auto norms = coefficient_norms(p, norm, cap_bits);
    double sum = 0;
    for (std::size_t sv = 1; sv < norms.size(); ++sv) sum += norms[sv];
    return sum;
}

double total_mass_bruteforce(const MatrixFn& fn, Norm norm, int cap_bits) {
    auto coeffs = all_coefficients_bruteforce(fn, cap_bits);
    double sum = 0;
    for (std::size_t sv = 1; sv < coeffs.size(); ++sv) sum += matrix_norm(coeffs[sv], norm);
    return sum;
}

std::pair<double, double> parseval_check(const MatrixFn& fn, int cap_bits) {
    check_enum_cap(fn.n, cap_bits, "parseval_check");
    const std::uint64_t total = std::uint64_t(1) << fn.n;
    const std::size_t entries = std::size_t(fn.w) * fn.w;

    // per-entry tables, transformed entrywise
    std::vector<std::vector<double>> tab(entries, std::vector<double>(total));
    double rhs = 0;
    for (std::uint64_t v = 0; v < total; ++v) {
        MatrixW m = fn(BitString::from_u64(fn.n, v));
        const auto& d = m.data();
        for (std::size_t e = 0; e < entries; ++e) tab[e][v] = d[e];
        double f2 = 0;
        for (double x : d) f2 += x * x;
        rhs += f2;
    }
    rhs /= double(total);

    double lhs = 0;
    for (std::size_t e = 0; e < entries; ++e) {
        walsh_hadamard(tab[e]);
        for (std::uint64_t sv = 0; sv < total; ++sv) {
            double c = tab[e][sv] / double(total);
            lhs += c * c;
        }
    }
    return {lhs, rhs};
}

double brry_weight(const BranchingProgram& p, bool allow_non_regular) {
    if (!allow_non_regular && p.cls() == ProgClass::general)
        throw std::invalid_argument(
            "brry_weight: bound only claimed for regular programs (pass allow_non_regular to "
            "evaluate anyway)");
    const std::size_t n = p.length();
    double sum = 0;
    MatrixW suffix = MatrixW::identity(p.w);  // product of avg matrices i+1..n
    for (std::size_t i = n; i >= 1; --i) {
        sum += spectral_norm(p.layers[i - 1].diff_matrix() * suffix);
        suffix = p.layers[i - 1].avg_matrix() * suffix;
    }
    return sum;
}

double bias_of(const BitSampler& sampler, int cap_bits) {
    check_enum_cap(std::size_t(sampler.seed_bits), cap_bits, "bias_of (seed space)");
    check_enum_cap(sampler.n, cap_bits, "bias_of (output space)");
    const std::uint64_t seeds = std::uint64_t(1) << sampler.seed_bits;
    std::vector<double> counts(std::uint64_t(1) << sampler.n, 0.0);
    for (std::uint64_t s = 0; s < seeds; ++s) counts[sampler.draw_from_u64(s).to_u64()] += 1.0;
    walsh_hadamard(counts);
    double bias = 0.0;
    for (std::size_t sv = 1; sv < counts.size(); ++sv)
        bias = std::max(bias, std::abs(counts[sv]));
    return bias / double(seeds);
}

void walsh_hadamard(std::vector<double>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)))
        throw std::invalid_argument("walsh_hadamard: size must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                double x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
}

}  // namespace bpf
