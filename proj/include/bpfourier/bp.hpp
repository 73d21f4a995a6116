#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bpfourier/bitstring.hpp"
#include "bpfourier/matrix.hpp"

namespace bpf {

// States are 0-indexed in code. The JSON interchange format uses 1-indexed
// states and 1-indexed order entries, converted at the parse/serialize
// boundary.

enum class ProgClass { permutation = 0, regular = 1, general = 2 };
const char* to_string(ProgClass c);
ProgClass class_from_string(const std::string& s);

// One layer: a pair of transition maps on [0, w).
struct Layer {
    std::vector<int> map0;
    std::vector<int> map1;
    ProgClass cls = ProgClass::general;

    int width() const { return int(map0.size()); }
    MatrixW matrix(bool bit) const;       // 0/1 transition matrix
    MatrixW avg_matrix() const;           // (M0 + M1) / 2
    MatrixW diff_matrix() const;          // (M0 - M1) / 2
};

// Validates entries and computes the classification.
Layer make_layer(std::vector<int> map0, std::vector<int> map1);

// Layered read-once oblivious branching program. The layers are stored in
// execution order (the "ordered core"); layer i reads input bit order[i].
struct BranchingProgram {
    int w = 1;
    std::vector<Layer> layers;
    std::vector<int> order;  // a permutation of [0, n)

    std::size_t length() const { return layers.size(); }
    bool is_ordered() const;
    ProgClass cls() const;  // weakest class over the layers

    int eval(const BitString& x, int u0) const;
    MatrixW as_matrix(const BitString& x) const;
};

// order empty means identity.
BranchingProgram make_program(int w, std::vector<Layer> layers, std::vector<int> order = {});

// Same layers with order reset to the identity (the ordered core as a
// standalone program).
BranchingProgram ordered_core(const BranchingProgram& p);

BranchingProgram concat(const BranchingProgram& a, const BranchingProgram& b);

// Layers i..j, 1-indexed inclusive. Requires an ordered program.
BranchingProgram subprogram(const BranchingProgram& p, std::size_t i, std::size_t j);

// A matrix-valued function on {0,1}^n.
struct MatrixFn {
    std::size_t n = 0;
    int w = 1;
    std::function<MatrixW(const BitString&)> f;
    MatrixW operator()(const BitString& x) const { return f(x); }
};

MatrixFn to_matrix_fn(const BranchingProgram& p);

// Restriction to the coordinates in t: unrestricted layers are replaced by
// their average, so evaluation at any x is a single layer product.
struct RestrictedProgram {
    BranchingProgram program;
    BitString t;

    MatrixW eval(const BitString& x) const;
    // Equals the program coefficient when s is contained in t, zero otherwise.
    MatrixW coefficient(const BitString& s) const;
};

RestrictedProgram restrict_program(const BranchingProgram& p, const BitString& t);
MatrixFn to_matrix_fn(const RestrictedProgram& r);

// Result of fixing the bits in t to values from x and collapsing those
// layers. exit_map is the identity whenever at least one coordinate stays
// free; with t all-ones the whole program collapses into exit_map.
struct CollapseResult {
    BranchingProgram program;
    std::vector<int> exit_map;

    int eval(const BitString& y, int u0) const;
    MatrixW as_matrix(const BitString& y) const;
    bool exit_is_identity() const;
};

// Defined for permutation programs only (the collapse of a general program
// need not be a program of the same class; use collapse_fn for those).
CollapseResult collapse(const BranchingProgram& p, const BitString& t, const BitString& x);

// Class-agnostic collapse as a matrix-valued function of the free bits.
MatrixFn collapse_fn(const BranchingProgram& p, const BitString& t, const BitString& x);

// Expectation of B[X].
MatrixW expectation_uniform(const BranchingProgram& p);
// means[i] = Pr[bit i = 1] under a product distribution
MatrixW expectation_product(const BranchingProgram& p, const std::vector<double>& means);

// Default cap for 2^b exhaustive enumerations (refuse above unless overridden).
inline constexpr int kEnumCapBits = 30;

// Named program families.
BranchingProgram mod3_program(std::size_t n);        // width 3, counts weight mod 3
BranchingProgram xor_program(std::size_t n);         // width 2, parity
BranchingProgram identity_program(int w, std::size_t n);

// Deterministic in rng_seed. shuffle_order draws a random input order.
BranchingProgram random_program(int w, std::size_t n, ProgClass cls, std::uint64_t rng_seed,
                                bool shuffle_order = false);

// JSON interchange format (1-indexed states and order entries):
// {"width": w, "length": n, "order": [...], "layers": [{"map0": [...], "map1": [...]}]}
std::string program_to_json(const BranchingProgram& p);
BranchingProgram program_from_json(const std::string& text);

// Deterministic helper RNG: xorshift-free, reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next();
    // uniform-ish value in [0, k); k > 0
    std::uint64_t below(std::uint64_t k) { return next() % k; }
    double unit();  // [0, 1)
private:
    std::uint64_t s_;
};

std::vector<int> random_permutation(int w, Rng& rng);

}  // namespace bpf
