#include "bpfourier/bp.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace bpf {

const char* to_string(ProgClass c) {
    switch (c) {
        case ProgClass::permutation: return "permutation";
        case ProgClass::regular: return "regular";
        default: return "general";
    }
}

ProgClass class_from_string(const std::string& s) {
    if (s == "permutation") return ProgClass::permutation;
    if (s == "regular") return ProgClass::regular;
    if (s == "general") return ProgClass::general;
    throw std::invalid_argument("unknown program class: " + s);
}

MatrixW Layer::matrix(bool bit) const {
    const auto& m = bit ? map1 : map0;
    MatrixW r(width());
    for (int u = 0; u < width(); ++u) r.at(u, m[u]) = 1.0;
    return r;
}

MatrixW Layer::avg_matrix() const {
    MatrixW r(width());
    for (int u = 0; u < width(); ++u) {
        r.at(u, map0[u]) += 0.5;
        r.at(u, map1[u]) += 0.5;
    }
    return r;
}

MatrixW Layer::diff_matrix() const {
    MatrixW r(width());
    for (int u = 0; u < width(); ++u) {
        r.at(u, map0[u]) += 0.5;
        r.at(u, map1[u]) -= 0.5;
    }
    return r;
}

static bool is_bijection(const std::vector<int>& m) {
    std::vector<char> seen(m.size(), 0);
    for (int v : m) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Layer make_layer(std::vector<int> map0, std::vector<int> map1) {
    if (map0.empty() || map0.size() != map1.size())
        throw std::invalid_argument("make_layer: maps must be nonempty and the same length");
    const int w = int(map0.size());
    for (int u = 0; u < w; ++u) {
        if (map0[u] < 0 || map0[u] >= w)
            throw std::invalid_argument("make_layer: map0[" + std::to_string(u) + "] = " +
                                        std::to_string(map0[u]) + " out of range [0," +
                                        std::to_string(w - 1) + "]");
        if (map1[u] < 0 || map1[u] >= w)
            throw std::invalid_argument("make_layer: map1[" + std::to_string(u) + "] = " +
                                        std::to_string(map1[u]) + " out of range [0," +
                                        std::to_string(w - 1) + "]");
    }
    Layer l;
    l.map0 = std::move(map0);
    l.map1 = std::move(map1);
    if (is_bijection(l.map0) && is_bijection(l.map1)) {
        l.cls = ProgClass::permutation;
    } else {
        // regular iff every state has in-degree exactly 2 over both maps
        std::vector<int> indeg(w, 0);
        for (int u = 0; u < w; ++u) {
            ++indeg[l.map0[u]];
            ++indeg[l.map1[u]];
        }
        bool reg = std::all_of(indeg.begin(), indeg.end(), [](int d) { return d == 2; });
        l.cls = reg ? ProgClass::regular : ProgClass::general;
    }
    return l;
}

bool BranchingProgram::is_ordered() const {
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] != int(i)) return false;
    return true;
}

ProgClass BranchingProgram::cls() const {
    ProgClass c = ProgClass::permutation;
    for (const auto& l : layers) c = std::max(c, l.cls);
    return c;
}

int BranchingProgram::eval(const BitString& x, int u0) const {
    if (x.size() != length()) throw std::invalid_argument("eval: input length mismatch");
    if (u0 < 0 || u0 >= w) throw std::invalid_argument("eval: start state out of range");
    int u = u0;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const Layer& l = layers[i];
        u = x.get(order[i]) ? l.map1[u] : l.map0[u];
    }
    return u;
}

MatrixW BranchingProgram::as_matrix(const BitString& x) const {
    if (x.size() != length()) throw std::invalid_argument("as_matrix: input length mismatch");
    MatrixW r(w);
    for (int u = 0; u < w; ++u) {
        int v = u;
        for (std::size_t i = 0; i < layers.size(); ++i)
            v = x.get(order[i]) ? layers[i].map1[v] : layers[i].map0[v];
        r.at(u, v) = 1.0;
    }
    return r;
}

BranchingProgram make_program(int w, std::vector<Layer> layers, std::vector<int> order) {
    if (w < 1) throw std::invalid_argument("make_program: width must be >= 1");
    const std::size_t n = layers.size();
    for (const auto& l : layers)
        if (l.width() != w) throw std::invalid_argument("make_program: layer width mismatch");
    if (order.empty()) {
        order.resize(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = int(i);
    }
    if (order.size() != n) throw std::invalid_argument("make_program: order length mismatch");
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= int(n) || seen[v])
            throw std::invalid_argument("make_program: order is not a permutation");
        seen[v] = 1;
    }
    BranchingProgram p;
    p.w = w;
    p.layers = std::move(layers);
    p.order = std::move(order);
    return p;
}

BranchingProgram ordered_core(const BranchingProgram& p) {
    return make_program(p.w, p.layers);
}

BranchingProgram concat(const BranchingProgram& a, const BranchingProgram& b) {
    if (a.w != b.w) throw std::invalid_argument("concat: width mismatch");
    std::vector<Layer> layers = a.layers;
    layers.insert(layers.end(), b.layers.begin(), b.layers.end());
    std::vector<int> order = a.order;
    const int na = int(a.length());
    for (int v : b.order) order.push_back(na + v);
    return make_program(a.w, std::move(layers), std::move(order));
}

BranchingProgram subprogram(const BranchingProgram& p, std::size_t i, std::size_t j) {
    if (!p.is_ordered())
        throw std::invalid_argument(
            "subprogram: program is unordered; take ordered_core() first");
    if (i < 1 || j < i || j > p.length())
        throw std::invalid_argument("subprogram: invalid layer range");
    std::vector<Layer> layers(p.layers.begin() + (i - 1), p.layers.begin() + j);
    return make_program(p.w, std::move(layers));
}

MatrixFn to_matrix_fn(const BranchingProgram& p) {
    return MatrixFn{p.length(), p.w, [p](const BitString& x) { return p.as_matrix(x); }};
}

MatrixW RestrictedProgram::eval(const BitString& x) const {
    if (x.size() != program.length())
        throw std::invalid_argument("restricted eval: input length mismatch");
    MatrixW r = MatrixW::identity(program.w);
    for (std::size_t i = 0; i < program.layers.size(); ++i) {
        const Layer& l = program.layers[i];
        int bit_pos = program.order[i];
        r = t.get(bit_pos) ? r * l.matrix(x.get(bit_pos)) : r * l.avg_matrix();
    }
    return r;
}

MatrixW RestrictedProgram::coefficient(const BitString& s) const {
    if (s.size() != program.length())
        throw std::invalid_argument("restricted coefficient: index length mismatch");
    if (!s.subset_of(t)) return MatrixW(program.w);
    MatrixW r = MatrixW::identity(program.w);
    for (std::size_t i = 0; i < program.layers.size(); ++i) {
        const Layer& l = program.layers[i];
        r = s.get(program.order[i]) ? r * l.diff_matrix() : r * l.avg_matrix();
    }
    return r;
}

RestrictedProgram restrict_program(const BranchingProgram& p, const BitString& t) {
    if (t.size() != p.length()) throw std::invalid_argument("restrict: mask length mismatch");
    return RestrictedProgram{p, t};
}

MatrixFn to_matrix_fn(const RestrictedProgram& r) {
    return MatrixFn{r.program.length(), r.program.w,
                    [r](const BitString& x) { return r.eval(x); }};
}

int CollapseResult::eval(const BitString& y, int u0) const {
    return exit_map[program.eval(y, u0)];
}

MatrixW CollapseResult::as_matrix(const BitString& y) const {
    MatrixW r(program.w);
    for (int u = 0; u < program.w; ++u) r.at(u, eval(y, u)) = 1.0;
    return r;
}

bool CollapseResult::exit_is_identity() const {
    for (std::size_t i = 0; i < exit_map.size(); ++i)
        if (exit_map[i] != int(i)) return false;
    return true;
}

CollapseResult collapse(const BranchingProgram& p, const BitString& t, const BitString& x) {
    if (t.size() != p.length() || x.size() != p.length())
        throw std::invalid_argument("collapse: length mismatch");
    if (p.cls() != ProgClass::permutation)
        throw std::invalid_argument(
            "collapse undefined for this class (permutation programs only; see collapse_fn)");

    const int w = p.w;
    std::vector<int> pending(w);
    for (int i = 0; i < w; ++i) pending[i] = i;
    auto compose_into = [&](std::vector<int>& m) {
        // state u -> m[pending[u]]
        std::vector<int> r(w);
        for (int u = 0; u < w; ++u) r[u] = m[pending[u]];
        m = std::move(r);
    };

    // free input coordinates, in input order, for the new order permutation
    std::vector<int> free_rank(p.length(), -1);
    int num_free = 0;
    for (std::size_t pos = 0; pos < p.length(); ++pos)
        if (!t.get(pos)) free_rank[pos] = num_free++;

    std::vector<Layer> layers;
    std::vector<int> order;
    for (std::size_t i = 0; i < p.layers.size(); ++i) {
        int pos = p.order[i];
        if (t.get(pos)) {
            const auto& m = x.get(pos) ? p.layers[i].map1 : p.layers[i].map0;
            std::vector<int> next(w);
            for (int u = 0; u < w; ++u) next[u] = m[pending[u]];
            pending = std::move(next);
        } else {
            std::vector<int> m0 = p.layers[i].map0;
            std::vector<int> m1 = p.layers[i].map1;
            compose_into(m0);
            compose_into(m1);
            layers.push_back(make_layer(std::move(m0), std::move(m1)));
            order.push_back(free_rank[pos]);
            for (int u = 0; u < w; ++u) pending[u] = u;
        }
    }

    CollapseResult res;
    if (layers.empty()) {
        res.program = make_program(w, {});
        res.exit_map = std::move(pending);
        return res;
    }
    // fold the trailing fixed maps into the last emitted layer
    Layer& last = layers.back();
    std::vector<int> m0(w), m1(w);
    for (int u = 0; u < w; ++u) {
        m0[u] = pending[last.map0[u]];
        m1[u] = pending[last.map1[u]];
    }
    last = make_layer(std::move(m0), std::move(m1));
    res.program = make_program(w, std::move(layers), std::move(order));
    res.exit_map.resize(w);
    for (int u = 0; u < w; ++u) res.exit_map[u] = u;
    return res;
}

MatrixFn collapse_fn(const BranchingProgram& p, const BitString& t, const BitString& x) {
    if (t.size() != p.length() || x.size() != p.length())
        throw std::invalid_argument("collapse_fn: length mismatch");
    const std::size_t n_free = p.length() - t.weight();
    BitString tc = t, xc = x;
    BranchingProgram prog = p;
    return MatrixFn{n_free, p.w, [prog, tc, xc, n_free](const BitString& y) {
                        if (y.size() != n_free)
                            throw std::invalid_argument("collapse_fn: input length mismatch");
                        // assemble Select(t, x, y) inline
                        BitString full(tc.size());
                        std::size_t next = 0;
                        for (std::size_t i = 0; i < tc.size(); ++i)
                            full.set(i, tc.get(i) ? xc.get(i) : y.get(next++));
                        return prog.as_matrix(full);
                    }};
}

MatrixW expectation_uniform(const BranchingProgram& p) {
    MatrixW r = MatrixW::identity(p.w);
    for (const auto& l : p.layers) r = r * l.avg_matrix();
    return r;
}

MatrixW expectation_product(const BranchingProgram& p, const std::vector<double>& means) {
    if (means.size() != p.length())
        throw std::invalid_argument("expectation_product: means length mismatch");
    MatrixW r = MatrixW::identity(p.w);
    for (std::size_t i = 0; i < p.layers.size(); ++i) {
        double q = means[p.order[i]];
        if (q < 0.0 || q > 1.0)
            throw std::invalid_argument("expectation_product: mean outside [0,1]");
        MatrixW m(p.w);
        for (int u = 0; u < p.w; ++u) {
            m.at(u, p.layers[i].map0[u]) += 1.0 - q;
            m.at(u, p.layers[i].map1[u]) += q;
        }
        r = r * m;
    }
    return r;
}

BranchingProgram mod3_program(std::size_t n) {
    if (n < 1) throw std::invalid_argument("mod3_program: n must be >= 1");
    Layer l = make_layer({0, 1, 2}, {1, 2, 0});
    return make_program(3, std::vector<Layer>(n, l));
}

BranchingProgram xor_program(std::size_t n) {
    if (n < 1) throw std::invalid_argument("xor_program: n must be >= 1");
    Layer l = make_layer({0, 1}, {1, 0});
    return make_program(2, std::vector<Layer>(n, l));
}

BranchingProgram identity_program(int w, std::size_t n) {
    std::vector<int> id(w);
    for (int i = 0; i < w; ++i) id[i] = i;
    Layer l = make_layer(id, id);
    return make_program(w, std::vector<Layer>(n, l));
}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::unit() { return double(next() >> 11) * 0x1.0p-53; }

std::vector<int> random_permutation(int w, Rng& rng) {
    std::vector<int> p(w);
    for (int i = 0; i < w; ++i) p[i] = i;
    for (int i = w - 1; i > 0; --i)
        std::swap(p[i], p[std::size_t(rng.below(std::uint64_t(i) + 1))]);
    return p;
}

BranchingProgram random_program(int w, std::size_t n, ProgClass cls, std::uint64_t rng_seed,
                                bool shuffle_order) {
    Rng rng(rng_seed);
    std::vector<Layer> layers;
    layers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (cls == ProgClass::permutation) {
            layers.push_back(make_layer(random_permutation(w, rng), random_permutation(w, rng)));
        } else if (cls == ProgClass::regular) {
            // shuffle the multiset {0,0,1,1,...,w-1,w-1} of target states
            std::vector<int> targets(2 * w);
            for (int u = 0; u < w; ++u) targets[2 * u] = targets[2 * u + 1] = u;
            for (int i2 = 2 * w - 1; i2 > 0; --i2)
                std::swap(targets[i2], targets[std::size_t(rng.below(std::uint64_t(i2) + 1))]);
            std::vector<int> m0(w), m1(w);
            for (int u = 0; u < w; ++u) {
                m0[u] = targets[2 * u];
                m1[u] = targets[2 * u + 1];
            }
            layers.push_back(make_layer(std::move(m0), std::move(m1)));
        } else {
            std::vector<int> m0(w), m1(w);
            for (int u = 0; u < w; ++u) {
                m0[u] = int(rng.below(w));
                m1[u] = int(rng.below(w));
            }
            layers.push_back(make_layer(std::move(m0), std::move(m1)));
        }
    }
    std::vector<int> order;
    if (shuffle_order && n > 0) {
        order.resize(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = int(i);
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(order[i], order[std::size_t(rng.below(std::uint64_t(i) + 1))]);
    }
    return make_program(w, std::move(layers), std::move(order));
}

std::string program_to_json(const BranchingProgram& p) {
    nlohmann::ordered_json j;
    j["width"] = p.w;
    j["length"] = p.length();
    std::vector<int> order1;
    for (int v : p.order) order1.push_back(v + 1);
    j["order"] = order1;
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (const auto& l : p.layers) {
        nlohmann::ordered_json jl;
        std::vector<int> m0, m1;
        for (int v : l.map0) m0.push_back(v + 1);
        for (int v : l.map1) m1.push_back(v + 1);
        jl["map0"] = m0;
        jl["map1"] = m1;
        layers.push_back(jl);
    }
    j["layers"] = layers;
    return j.dump();
}

BranchingProgram program_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int w = j.at("width").get<int>();
    std::size_t n = j.at("length").get<std::size_t>();
    std::vector<int> order;
    for (int v : j.at("order").get<std::vector<int>>()) order.push_back(v - 1);
    std::vector<Layer> layers;
    for (const auto& jl : j.at("layers")) {
        std::vector<int> m0, m1;
        for (int v : jl.at("map0").get<std::vector<int>>()) m0.push_back(v - 1);
        for (int v : jl.at("map1").get<std::vector<int>>()) m1.push_back(v - 1);
        layers.push_back(make_layer(std::move(m0), std::move(m1)));
    }
    if (layers.size() != n)
        throw std::invalid_argument("program_from_json: length does not match layer count");
    return make_program(w, std::move(layers), std::move(order));
}

}  // namespace bpf
