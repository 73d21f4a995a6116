// bpf: branching-program Fourier analysis, samplers, recursive generators,
// and experiment drivers.

#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpfourier/bp.hpp"
#include "bpfourier/experiments.hpp"
#include "bpfourier/fourier.hpp"
#include "bpfourier/prg.hpp"
#include "bpfourier/samplers.hpp"

using namespace bpf;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SeedStream stream_from_hex(std::uint64_t bits, const std::string& hex) {
    return SeedStream(BitString::from_hex(std::size_t(bits), hex));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier analysis of read-once oblivious branching programs"};
    app.require_subcommand(1);

    // ---- sample ----------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "draw from a seeded sampler");
    std::string kind = "smallbias", seed_hex;
    std::uint64_t s_n = 8;
    double s_mu = 0.25, s_delta = 0.0;
    int s_d = 1, s_k = 2;
    sample->add_option("--kind", kind, "smallbias | kwise | almostkwise")->required();
    sample->add_option("--n", s_n, "output length")->required();
    sample->add_option("--mu", s_mu, "bias bound (smallbias)");
    sample->add_option("--d", s_d, "per-bit expectation 2^-d (kwise/almostkwise)");
    sample->add_option("--k", s_k, "independence parameter");
    sample->add_option("--delta", s_delta, "closeness parameter (almostkwise)");
    sample->add_option("--seed-hex", seed_hex, "seed bits in hex")->required();
    sample->callback([&] {
        std::uint64_t len;
        if (kind == "smallbias") len = small_bias_seed_len(std::size_t(s_n), s_mu);
        else if (kind == "kwise") len = kwise_seed_len(std::size_t(s_n), s_d, s_k);
        else if (kind == "almostkwise")
            len = almost_kwise_seed_len(std::size_t(s_n), s_d, s_k, s_delta);
        else throw CLI::ValidationError("--kind", "unknown sampler kind");
        SeedStream st = stream_from_hex(len, seed_hex);
        BitString out;
        if (kind == "smallbias") out = small_bias(std::size_t(s_n), s_mu, st);
        else if (kind == "kwise") out = kwise_bits(std::size_t(s_n), s_d, s_k, st);
        else out = almost_kwise_mask(std::size_t(s_n), s_d, s_k, s_delta, st);
        std::cout << out.to_hex() << "\n";
        std::cout << "# consumed-seed-bits: " << st.consumed() << "\n";
    });

    // ---- gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "run the recursive generator");
    std::uint64_t g_n = 64;
    int g_w = 2;
    double g_eps = 0.25;
    std::string g_variant = "perm", g_seed_hex;
    bool g_trace = false, g_print_len = false, g_rescale = false;
    gen->add_option("--n", g_n, "output length")->required();
    gen->add_option("--w", g_w, "program width the output should fool");
    gen->add_option("--eps", g_eps, "error parameter");
    gen->add_option("--variant", g_variant, "perm | general");
    gen->add_option("--seed-hex", g_seed_hex, "seed bits in hex");
    gen->add_flag("--trace", g_trace, "emit one JSON line per recursion level");
    gen->add_flag("--rescale", g_rescale, "rescale eps so the end-to-end error is below it");
    gen->add_flag("--print-seed-length", g_print_len, "print required seed bits and exit");
    gen->callback([&] {
        Variant variant = variant_from_string(g_variant);
        PrgParams params = g_rescale ? rescaled_params(g_n, g_w, g_eps, variant)
                                     : make_params(g_n, g_w, g_eps, variant);
        std::uint64_t len = seed_length(params, g_n);
        if (g_print_len) {
            std::cout << len << "\n";
            return;
        }
        if (g_seed_hex.empty())
            throw CLI::ValidationError("--seed-hex",
                                       "required (use --print-seed-length for the bit count)");
        SeedStream st = stream_from_hex(len, g_seed_hex);
        GenTrace trace;
        BitString out = generate_traced(params, g_n, st, trace);
        std::cout << out.to_hex() << "\n";
        if (g_trace) {
            for (const auto& l : trace.levels) {
                nlohmann::ordered_json j;
                j["level"] = l.level;
                j["n"] = l.n;
                j["base_case"] = l.base_case;
                j["t_weight"] = l.t_weight;
                j["failed_step4"] = l.failed_step4;
                j["t_bits"] = l.t_bits;
                j["x_bits"] = l.x_bits;
                j["base_bits"] = l.base_bits;
                j["skipped_bits"] = l.skipped_bits;
                std::cout << j.dump() << "\n";
            }
        }
    });

    // ---- mass ------------------------------------------------------------
    auto* mass = app.add_subcommand("mass", "level-mass report for a program file");
    std::string m_file, m_out, m_norm = "2";
    int m_kmin = 0, m_kmax = 3;
    bool m_per_s = false;
    mass->add_option("--bp", m_file, "program JSON file")->required();
    mass->add_option("--kmin", m_kmin, "lowest level");
    mass->add_option("--kmax", m_kmax, "highest level");
    mass->add_option("--norm", m_norm, "2 | frob");
    mass->add_option("--out", m_out, "output CSV path (default stdout)");
    mass->add_flag("--per-s", m_per_s, "one row per index, lexicographic within a level");
    mass->callback([&] {
        BranchingProgram p = program_from_json(read_file(m_file));
        Norm norm = m_norm == "frob" ? Norm::frobenius : Norm::spectral;
        std::ostringstream out;
        out << "n,w,k,value,bound,count\n";
        for (int k = m_kmin; k <= m_kmax && std::size_t(k) <= p.length(); ++k) {
            MassReport r = level_mass(p, k, norm);
            if (m_per_s) {
                // lexicographic over the bit string = increasing integer index
                const std::uint64_t total = std::uint64_t(1) << p.length();
                for (std::uint64_t sv = 0; sv < total; ++sv) {
                    if (std::popcount(sv) != k) continue;
                    BitString s = BitString::from_u64(p.length(), sv);
                    double v = matrix_norm(coefficient(p, s), norm);
                    out << p.length() << "," << p.w << "," << k << "," << fmt(v) << ","
                        << fmt(r.bound) << ",1\n";
                }
            } else {
                out << p.length() << "," << p.w << "," << k << "," << fmt(r.value) << ","
                    << fmt(r.bound) << "," << r.count << "\n";
            }
        }
        if (m_out.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(m_out);
            f << out.str();
        }
    });

    // ---- experiment ------------------------------------------------------
    auto* exp = app.add_subcommand("experiment", "run a named experiment from a config");
    std::string e_id, e_config, e_out = ".";
    bool e_print_default = false;
    exp->add_option("--id", e_id,
                    "levelk | brry | restriction | mainlemma | prg | prg-general | chernoff | "
                    "mod3 | parseval");
    exp->add_option("--config", e_config, "config JSON file (default: built-in config for --id)");
    exp->add_option("--out", e_out, "output directory");
    exp->add_flag("--print-default-config", e_print_default,
                  "print the built-in config for --id and exit");
    exp->callback([&] {
        if (e_print_default) {
            std::cout << default_experiment_config(e_id) << "\n";
            return;
        }
        std::string cfg = e_config.empty() ? default_experiment_config(e_id)
                                           : read_file(e_config);
        ExperimentResult r = run_experiment(cfg, e_out);
        std::cout << r.id << ": passes=" << r.passes << " fails=" << r.fails
                  << " skipped=" << r.skipped << "\n";
        for (const auto& f : r.files) std::cout << "  " << e_out << "/" << f << "\n";
        if (r.fails > 0) throw CLI::RuntimeError("experiment reported failures", 2);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
