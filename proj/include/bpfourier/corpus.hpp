#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpfourier/bp.hpp"

namespace bpf {

// Deterministic program corpus: named specials plus random programs per
// (class, width, length) cell, optionally with order-scrambled twins.
struct CorpusSpec {
    std::vector<ProgClass> classes{ProgClass::permutation};
    std::vector<int> widths{2, 3};
    std::vector<std::size_t> lengths{8, 12, 16};
    int count_per_cell = 1;
    std::uint64_t rng_seed = 1;
    bool include_specials = true;   // mod3, width-2 xor, identity
    bool scrambled_twins = false;
};

struct CorpusEntry {
    std::string name;
    BranchingProgram program;
};

std::vector<CorpusEntry> corpus(const CorpusSpec& spec);

}  // namespace bpf
