#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bpfourier/bitstring.hpp"
#include "bpfourier/bp.hpp"
#include "bpfourier/matrix.hpp"
#include "bpfourier/samplers.hpp"

namespace bpf {

enum class Norm { spectral, frobenius };

double matrix_norm(const MatrixW& m, Norm norm);

// chi_s(x) = (-1)^(sum_i s(i) x(i)); returns +1 or -1.
int character(const BitString& s, const BitString& x);

// Fourier coefficient of a program, computed as the layer product of
// (M0+M1)/2 and (M0-M1)/2 factors after mapping s through the input order.
MatrixW coefficient(const BranchingProgram& p, const BitString& s);

// Definitional average E_U[f(U) chi_s(U)]; the oracle for coefficient.
MatrixW coefficient_bruteforce(const MatrixFn& fn, const BitString& s,
                               int cap_bits = kEnumCapBits);

// All 2^n coefficients by the definitional average, indexed by s as an
// integer (bit i of the index = s(i)).
std::vector<MatrixW> all_coefficients_bruteforce(const MatrixFn& fn,
                                                 int cap_bits = kEnumCapBits);

// Norms of all 2^n coefficients of the ordered core, layer-product route,
// indexed by s as an integer over layer positions.
std::vector<double> coefficient_norms(const BranchingProgram& p, Norm norm,
                                      int cap_bits = kEnumCapBits);

struct MassReport {
    std::size_t n = 0;
    int w = 0;
    int k = 0;
    double value = 0.0;
    double bound = 0.0;       // context bound: (2w^2)^k for regular, sqrt(w C(n,k)) otherwise
    std::uint64_t count = 0;  // number of coefficients summed
};

// Sum of coefficient norms over all indices of weight k. Refuses when
// C(n,k) exceeds the term cap.
MassReport level_mass(const BranchingProgram& p, int k, Norm norm = Norm::spectral,
                      std::uint64_t term_cap = 10'000'000);

// Sum over all nonzero indices (2^n enumeration of the layer products).
double total_mass(const BranchingProgram& p, Norm norm = Norm::spectral,
                  int cap_bits = kEnumCapBits);

// Brute-force route for arbitrary matrix functions.
double total_mass_bruteforce(const MatrixFn& fn, Norm norm = Norm::spectral,
                             int cap_bits = kEnumCapBits);

// (sum_s ||f^(s)||_F^2, E_U ||f(U)||_F^2)
std::pair<double, double> parseval_check(const MatrixFn& fn, int cap_bits = kEnumCapBits);

// Sum over i of || coefficient of B_{i..n} at 1 then zeros ||_2, via suffix
// accumulation over the ordered core. Bounded by 2w^2 for regular programs;
// pass allow_non_regular to evaluate the quantity on other classes anyway.
double brry_weight(const BranchingProgram& p, bool allow_non_regular = false);

// max over s != 0 of |E[chi_s(X)]|, exact over the sampler's full seed space.
double bias_of(const BitSampler& sampler, int cap_bits = kEnumCapBits);

// C(n, k) with saturation at 2^63-1.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// In-place Walsh-Hadamard transform of a length-2^n array.
void walsh_hadamard(std::vector<double>& a);

}  // namespace bpf
