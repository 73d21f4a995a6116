#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpfourier/bitstring.hpp"
#include "bpfourier/seedstream.hpp"

namespace bpf {

enum class Variant { perm, general };
const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Generator parameters, computed once at the top level and reused unchanged
// at every recursion level. delta and mu can underflow a double at large n;
// the log2 forms are authoritative for seed accounting.
struct PrgParams {
    Variant variant = Variant::perm;
    int w = 2;
    double eps = 0.25;
    int d = 4;                     // p = 2^-d
    int k = 1;
    double log2_inv_delta = 0.0;   // perm only
    double log2_inv_mu = 0.0;

    double p() const;
    double delta() const;          // 0.0 when underflowed
    double mu() const;
    double base_threshold() const; // step-2 cutoff, frozen across levels
    bool base_case(std::uint64_t n) const;
};

// d minimal with p in the required interval; k the minimal integer
// satisfying its lower bound; delta and mu by the variant formulas.
PrgParams make_params(std::uint64_t n, int w, double eps, Variant variant);

// Same, with eps replaced by eps/(6 sqrt(w) r) (perm) or eps/(4 sqrt(w) r)
// (general), r the dry-run recursion depth at eps, so that the end-to-end
// error is at most eps.
PrgParams rescaled_params(std::uint64_t n, int w, double eps, Variant variant);

// Select(t, x, y): x on the coordinates in t, y streamed into the rest.
// Requires |y| >= n - |t|; surplus bits of y are ignored.
BitString select(const BitString& t, const BitString& x, const BitString& y);

struct LevelRecord {
    int level = 0;
    std::uint64_t n = 0;
    std::uint64_t t_weight = 0;
    bool base_case = false;
    bool failed_step4 = false;
    std::uint64_t t_bits = 0;      // seed bits consumed by the T sampler
    std::uint64_t x_bits = 0;      // seed bits consumed by the X sampler
    std::uint64_t base_bits = 0;   // raw bits output at the base level
    std::uint64_t skipped_bits = 0;  // remaining layout skipped on failure
};

struct GenTrace {
    std::vector<LevelRecord> levels;
    std::uint64_t consumed = 0;
    int depth() const { return int(levels.size()); }
    bool failed() const;
};

// Per-level dry run of the seed layout.
struct LevelPlan {
    std::uint64_t n = 0;
    bool base_case = false;
    std::uint64_t t_bits = 0;
    std::uint64_t x_bits = 0;
    std::uint64_t base_bits = 0;
};

std::vector<LevelPlan> seed_plan(const PrgParams& params, std::uint64_t n);

// Exact number of seed bits consumed by generate(params, n, .): per level
// the T bits, then the X bits, then the recursive seed; the base level
// consumes n raw bits.
std::uint64_t seed_length(const PrgParams& params, std::uint64_t n);
std::uint64_t seed_length(std::uint64_t n, int w, double eps, Variant variant);

int dry_run_depth(const PrgParams& params, std::uint64_t n);

// Whether generate can actually draw its samplers at this n (field sizes
// fit in m <= 64). Seed accounting works regardless.
struct SamplerFeasibility {
    bool ok = true;
    int m_t = 0;   // largest field needed by the T sampler
    int m_x = 0;   // largest field needed by the X sampler
};
SamplerFeasibility sampler_feasibility(const PrgParams& params, std::uint64_t n);

// The recursive generator. Consumes exactly seed_length(params, n) bits on
// every path (the step-4 failure path skips the unused remainder of the
// layout). Output length is always n.
BitString generate(const PrgParams& params, std::uint64_t n, SeedStream& seed);
BitString generate_traced(const PrgParams& params, std::uint64_t n, SeedStream& seed,
                          GenTrace& trace);

}  // namespace bpf
