#include "bpfourier/corpus.hpp"

namespace bpf {

// Derives per-entry seeds from the spec seed so the corpus is stable under
// reordering of the generation loop.
static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    Rng r(a ^ (b * 0x2545f4914f6cdd1dULL));
    return r.next();
}

std::vector<CorpusEntry> corpus(const CorpusSpec& spec) {
    std::vector<CorpusEntry> out;
    if (spec.include_specials) {
        for (std::size_t n : spec.lengths) {
            out.push_back({"mod3_n" + std::to_string(n), mod3_program(n)});
            out.push_back({"xor2_n" + std::to_string(n), xor_program(n)});
        }
        if (!spec.widths.empty() && !spec.lengths.empty())
            out.push_back({"identity_w" + std::to_string(spec.widths[0]) + "_n" +
                               std::to_string(spec.lengths[0]),
                           identity_program(spec.widths[0], spec.lengths[0])});
    }
    std::uint64_t cell = 0;
    for (ProgClass cls : spec.classes)
        for (int w : spec.widths)
            for (std::size_t n : spec.lengths) {
                ++cell;
                for (int i = 0; i < spec.count_per_cell; ++i) {
                    std::uint64_t s = mix(spec.rng_seed, cell * 1000003ULL + i);
                    std::string base = std::string("rand_") + to_string(cls) + "_w" +
                                       std::to_string(w) + "_n" + std::to_string(n) + "_i" +
                                       std::to_string(i);
                    BranchingProgram p = random_program(w, n, cls, s);
                    if (spec.scrambled_twins) {
                        BranchingProgram twin = random_program(w, n, cls, s, true);
                        out.push_back({base, p});
                        out.push_back({base + "_scrambled", twin});
                    } else {
                        out.push_back({base, p});
                    }
                }
            }
    return out;
}

}  // namespace bpf
