#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bpfourier/bp.hpp"
#include "bpfourier/distinguish.hpp"
#include "bpfourier/errors.hpp"
#include "bpfourier/fourier.hpp"
#include "bpfourier/prg.hpp"
#include "bpfourier/samplers.hpp"

namespace py = pybind11;
using namespace bpf;

namespace {

// matrices cross the boundary as nested lists
std::vector<std::vector<double>> rows(const MatrixW& m) {
    std::vector<std::vector<double>> r(m.width(), std::vector<double>(m.width()));
    for (int i = 0; i < m.width(); ++i)
        for (int j = 0; j < m.width(); ++j) r[i][j] = m.at(i, j);
    return r;
}

BitString bits_from_str(const std::string& s) { return BitString::from_string(s); }

}  // namespace

PYBIND11_MODULE(bpfourier, m) {
    m.doc() = "Fourier analysis of read-once oblivious branching programs, seeded samplers, "
              "and the recursive restriction-based generators. Bit strings cross the "
              "boundary as '0101' strings; states are 0-indexed.";

    py::register_exception<cap_exceeded>(m, "CapExceeded");
    py::register_exception<seed_exhausted>(m, "SeedExhausted");
    py::register_exception<field_overflow>(m, "FieldOverflow");

    py::enum_<ProgClass>(m, "ProgClass")
        .value("permutation", ProgClass::permutation)
        .value("regular", ProgClass::regular)
        .value("general", ProgClass::general);

    py::enum_<Variant>(m, "Variant")
        .value("perm", Variant::perm)
        .value("general", Variant::general);

    py::class_<BranchingProgram>(m, "BranchingProgram")
        .def_property_readonly("width", [](const BranchingProgram& p) { return p.w; })
        .def_property_readonly("length", &BranchingProgram::length)
        .def_property_readonly("order", [](const BranchingProgram& p) { return p.order; })
        .def("cls", &BranchingProgram::cls)
        .def("is_ordered", &BranchingProgram::is_ordered)
        .def("eval",
             [](const BranchingProgram& p, const std::string& x, int u0) {
                 return p.eval(bits_from_str(x), u0);
             },
             py::arg("x"), py::arg("u0") = 0)
        .def("as_matrix",
             [](const BranchingProgram& p, const std::string& x) {
                 return rows(p.as_matrix(bits_from_str(x)));
             })
        .def("to_json", &program_to_json)
        .def("__repr__", [](const BranchingProgram& p) {
            return "<BranchingProgram w=" + std::to_string(p.w) +
                   " n=" + std::to_string(p.length()) + " " + to_string(p.cls()) + ">";
        });

    m.def("program_from_json", &program_from_json);
    m.def("make_program",
          [](int w, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& layers,
             const std::vector<int>& order) {
              std::vector<Layer> ls;
              for (const auto& [m0, m1] : layers) ls.push_back(make_layer(m0, m1));
              return make_program(w, std::move(ls), order);
          },
          py::arg("w"), py::arg("layers"), py::arg("order") = std::vector<int>{});
    m.def("mod3_program", &mod3_program);
    m.def("xor_program", &xor_program);
    m.def("identity_program", &identity_program);
    m.def("random_program", &random_program, py::arg("w"), py::arg("n"), py::arg("cls"),
          py::arg("rng_seed"), py::arg("shuffle_order") = false);
    m.def("concat", &concat);
    m.def("subprogram", &subprogram);
    m.def("ordered_core", &ordered_core);
    m.def("expectation_uniform",
          [](const BranchingProgram& p) { return rows(expectation_uniform(p)); });
    m.def("expectation_product",
          [](const BranchingProgram& p, const std::vector<double>& means) {
              return rows(expectation_product(p, means));
          });
    m.def("restrict_eval",
          [](const BranchingProgram& p, const std::string& t, const std::string& x) {
              return rows(restrict_program(p, bits_from_str(t)).eval(bits_from_str(x)));
          },
          "evaluate the restriction of p to t at x");
    m.def("collapse",
          [](const BranchingProgram& p, const std::string& t, const std::string& x) {
              CollapseResult r = collapse(p, bits_from_str(t), bits_from_str(x));
              return py::make_tuple(r.program, r.exit_map);
          });

    m.def("character", [](const std::string& s, const std::string& x) {
        return character(bits_from_str(s), bits_from_str(x));
    });
    m.def("coefficient", [](const BranchingProgram& p, const std::string& s) {
        return rows(coefficient(p, bits_from_str(s)));
    });
    m.def("coefficient_bruteforce",
          [](const BranchingProgram& p, const std::string& s) {
              return rows(coefficient_bruteforce(to_matrix_fn(p), bits_from_str(s)));
          });
    m.def("level_mass",
          [](const BranchingProgram& p, int k) {
              MassReport r = level_mass(p, k);
              py::dict d;
              d["n"] = r.n;
              d["w"] = r.w;
              d["k"] = r.k;
              d["value"] = r.value;
              d["bound"] = r.bound;
              d["count"] = r.count;
              return d;
          });
    m.def("total_mass", [](const BranchingProgram& p) { return total_mass(p); });
    m.def("brry_weight", &brry_weight, py::arg("p"), py::arg("allow_non_regular") = false);
    m.def("spectral_norm_rows", [](const std::vector<std::vector<double>>& a) {
        MatrixW mm(int(a.size()));
        for (int i = 0; i < mm.width(); ++i)
            for (int j = 0; j < mm.width(); ++j) mm.at(i, j) = a[i][j];
        return spectral_norm(mm);
    });

    m.def("select", [](const std::string& t, const std::string& x, const std::string& y) {
        return select(bits_from_str(t), bits_from_str(x), bits_from_str(y)).to_string();
    });

    py::class_<PrgParams>(m, "PrgParams")
        .def_readonly("variant", &PrgParams::variant)
        .def_readonly("w", &PrgParams::w)
        .def_readonly("eps", &PrgParams::eps)
        .def_readonly("d", &PrgParams::d)
        .def_readonly("k", &PrgParams::k)
        .def_readonly("log2_inv_delta", &PrgParams::log2_inv_delta)
        .def_readonly("log2_inv_mu", &PrgParams::log2_inv_mu)
        .def("p", &PrgParams::p)
        .def("delta", &PrgParams::delta)
        .def("mu", &PrgParams::mu)
        .def("base_threshold", &PrgParams::base_threshold);

    m.def("make_params", &make_params);
    m.def("seed_length",
          py::overload_cast<std::uint64_t, int, double, Variant>(&seed_length));
    m.def("seed_length_for",
          py::overload_cast<const PrgParams&, std::uint64_t>(&seed_length));
    m.def("generate",
          [](const PrgParams& params, std::uint64_t n, const std::string& seed_bits) {
              SeedStream st(bits_from_str(seed_bits));
              return generate(params, n, st).to_string();
          },
          py::arg("params"), py::arg("n"), py::arg("seed_bits"));

    m.def("small_bias",
          [](std::size_t n, double mu, const std::string& seed_bits) {
              SeedStream st(bits_from_str(seed_bits));
              return small_bias(n, mu, st).to_string();
          });
    m.def("small_bias_seed_len", &small_bias_seed_len);
    m.def("kwise_bits",
          [](std::size_t n, int d, int k, const std::string& seed_bits) {
              SeedStream st(bits_from_str(seed_bits));
              return kwise_bits(n, d, k, st).to_string();
          });
    m.def("kwise_seed_len", &kwise_seed_len);
    m.def("almost_kwise_mask",
          [](std::size_t n, int d, int k, double delta, const std::string& seed_bits) {
              SeedStream st(bits_from_str(seed_bits));
              return almost_kwise_mask(n, d, k, delta, st).to_string();
          });
    m.def("almost_kwise_seed_len", &almost_kwise_seed_len);
    m.def("chernoff_bound", &chernoff_bound);

    m.def("distinguish_error",
          [](const BranchingProgram& p, double eps, Variant variant, int exact_threshold,
             std::uint64_t mc_samples) {
              PrgParams params = make_params(p.length(), p.w, eps, variant);
              DistinguishOptions opt;
              opt.exact_threshold_bits = exact_threshold;
              opt.mc_samples = mc_samples;
              ErrorEstimate e = distinguish_error(p, GeneratorSpec::prg(params, p.length()), opt);
              py::dict d;
              d["value"] = e.value;
              d["mode"] = e.mode == ErrorEstimate::Mode::exact ? "exact" : "montecarlo";
              d["samples"] = e.samples;
              d["ci99"] = e.ci99;
              return d;
          },
          py::arg("program"), py::arg("eps") = 0.25, py::arg("variant") = Variant::perm,
          py::arg("exact_threshold") = 26, py::arg("mc_samples") = 100000);
}
