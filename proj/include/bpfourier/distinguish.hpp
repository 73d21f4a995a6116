#pragma once

#include <cstdint>

#include "bpfourier/bp.hpp"
#include "bpfourier/prg.hpp"

namespace bpf {

struct ErrorEstimate {
    double value = 0.0;
    enum class Mode { exact, montecarlo } mode = Mode::exact;
    std::uint64_t samples = 0;
    double ci99 = 0.0;  // Hoeffding 99% half-width propagated to the norm
};

struct GeneratorSpec {
    enum class Kind { prg, uniform, constant } kind = Kind::prg;
    PrgParams params;        // prg only
    std::uint64_t n = 0;
    BitString constant_out;  // constant only

    static GeneratorSpec prg(const PrgParams& p, std::uint64_t n);
    static GeneratorSpec uniform(std::uint64_t n);
    static GeneratorSpec constant(BitString out);
};

struct DistinguishOptions {
    int exact_threshold_bits = 26;  // full seed enumeration up to 2^this
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t mc_rng_seed = 1;
    bool force_exact = false;       // override the threshold (still capped at 2^62)
};

// || E_seeds[B[G(seed)]] - E_U[B[U]] ||_2. The uniform side is the exact
// layer product; the seed side is exact enumeration when the seed is short
// enough, Monte Carlo otherwise.
ErrorEstimate distinguish_error(const BranchingProgram& p, const GeneratorSpec& gen,
                                const DistinguishOptions& opt = {});

}  // namespace bpf
