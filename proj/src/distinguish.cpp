#include "bpfourier/distinguish.hpp"

#include <cmath>
#include <stdexcept>

#include "bpfourier/errors.hpp"
#include "bpfourier/matrix.hpp"

namespace bpf {

GeneratorSpec GeneratorSpec::prg(const PrgParams& p, std::uint64_t n) {
    GeneratorSpec g;
    g.kind = Kind::prg;
    g.params = p;
    g.n = n;
    return g;
}

GeneratorSpec GeneratorSpec::uniform(std::uint64_t n) {
    GeneratorSpec g;
    g.kind = Kind::uniform;
    g.n = n;
    return g;
}

GeneratorSpec GeneratorSpec::constant(BitString out) {
    GeneratorSpec g;
    g.kind = Kind::constant;
    g.n = out.size();
    g.constant_out = std::move(out);
    return g;
}

static std::uint64_t generator_seed_bits(const GeneratorSpec& gen) {
    switch (gen.kind) {
        case GeneratorSpec::Kind::prg: return seed_length(gen.params, gen.n);
        case GeneratorSpec::Kind::uniform: return gen.n;
        default: return 0;
    }
}

static BitString run_generator(const GeneratorSpec& gen, SeedStream& seed) {
    switch (gen.kind) {
        case GeneratorSpec::Kind::prg: return generate(gen.params, gen.n, seed);
        case GeneratorSpec::Kind::uniform: return seed.read_bitstring(std::size_t(gen.n));
        default: return gen.constant_out;
    }
}

// accumulate per-start-state final-state counts for one output
static void tally(const BranchingProgram& p, const BitString& y,
                  std::vector<std::uint64_t>& counts) {
    const int w = p.w;
    for (int u = 0; u < w; ++u) counts[std::size_t(u) * w + p.eval(y, u)] += 1;
}

ErrorEstimate distinguish_error(const BranchingProgram& p, const GeneratorSpec& gen,
                                const DistinguishOptions& opt) {
    if (gen.n != p.length())
        throw std::invalid_argument("distinguish_error: generator length != program length");
    const int w = p.w;
    const MatrixW uniform_side = expectation_uniform(p);
    const std::uint64_t bits = generator_seed_bits(gen);

    ErrorEstimate est;
    std::vector<std::uint64_t> counts(std::size_t(w) * w, 0);

    if (bits <= std::uint64_t(opt.exact_threshold_bits) || (opt.force_exact && bits <= 62)) {
        if (bits > 62)
            throw cap_exceeded("distinguish_error: exact mode needs 2^" + std::to_string(bits) +
                               " seeds");
        est.mode = ErrorEstimate::Mode::exact;
        const std::uint64_t total = std::uint64_t(1) << bits;
        est.samples = total;
        for (std::uint64_t s = 0; s < total; ++s) {
            SeedStream stream(BitString::from_u64(std::size_t(bits), s));
            tally(p, run_generator(gen, stream), counts);
        }
        MatrixW seed_side(w);
        for (int u = 0; u < w; ++u)
            for (int v = 0; v < w; ++v)
                seed_side.at(u, v) = double(counts[std::size_t(u) * w + v]) / double(total);
        est.value = spectral_norm(seed_side - uniform_side);
        est.ci99 = 0.0;
        return est;
    }

    est.mode = ErrorEstimate::Mode::montecarlo;
    est.samples = opt.mc_samples;
    Rng rng(opt.mc_rng_seed);
    const std::size_t words = std::size_t((bits + 63) / 64);
    for (std::uint64_t s = 0; s < opt.mc_samples; ++s) {
        BitString seed_bits{std::size_t(bits)};
        for (std::size_t j = 0; j < words; ++j) {
            std::uint64_t word = rng.next();
            for (int b = 0; b < 64; ++b) {
                std::size_t idx = j * 64 + std::size_t(b);
                if (idx >= bits) break;
                seed_bits.set(idx, (word >> b) & 1);
            }
        }
        SeedStream stream(std::move(seed_bits));
        tally(p, run_generator(gen, stream), counts);
    }
    MatrixW seed_side(w);
    for (int u = 0; u < w; ++u)
        for (int v = 0; v < w; ++v)
            seed_side.at(u, v) = double(counts[std::size_t(u) * w + v]) / double(opt.mc_samples);
    est.value = spectral_norm(seed_side - uniform_side);
    // per-entry Hoeffding half-width at 99%, propagated through ||.||_2 <= ||.||_F
    double h = std::sqrt(std::log(2.0 / 0.01) / (2.0 * double(opt.mc_samples)));
    est.ci99 = h * w;
    return est;
}

}  // namespace bpf
