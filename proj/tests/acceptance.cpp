// Acceptance suite: every criterion as a timed check with one pass/fail
// line. Exits nonzero if any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "bpfourier/bp.hpp"
#include "bpfourier/corpus.hpp"
#include "bpfourier/distinguish.hpp"
#include "bpfourier/fourier.hpp"
#include "bpfourier/prg.hpp"
#include "bpfourier/samplers.hpp"

using namespace bpf;

namespace {

int g_failures = 0;

struct Criterion {
    int id;
    std::string label;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Criterion(int id, std::string label) : id(id), label(std::move(label)) {}

    void finish(bool ok, const std::string& detail) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        std::printf("%s criterion %2d: %s (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", id,
                    label.c_str(), detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

std::vector<CorpusEntry> mixed_corpus(int count, int wmax, std::size_t nmax,
                                      std::uint64_t seed) {
    // random programs over all three classes, deterministic
    std::vector<CorpusEntry> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        int w = 2 + int(rng.below(std::uint64_t(wmax - 1)));
        std::size_t n = 2 + rng.below(nmax - 1);
        auto cls = ProgClass(i % 3);
        out.push_back({"p" + std::to_string(i), random_program(w, n, cls, rng.next(), i % 2)});
    }
    return out;
}

std::vector<CorpusEntry> class_corpus(int count, ProgClass cls, std::vector<int> widths,
                                      std::size_t nmin, std::size_t nmax, std::uint64_t seed) {
    std::vector<CorpusEntry> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        int w = widths[rng.below(widths.size())];
        std::size_t n = nmin + rng.below(nmax - nmin + 1);
        out.push_back({"p" + std::to_string(i), random_program(w, n, cls, rng.next(), i % 2)});
    }
    return out;
}

BitString rng_bits(Rng& rng, std::size_t len) {
    BitString b(len);
    for (std::size_t i = 0; i < len; i += 64) {
        std::uint64_t w = rng.next();
        for (std::size_t j = i; j < std::min(len, i + 64); ++j)
            b.set(j, (w >> (j - i)) & 1);
    }
    return b;
}

// ---- criterion 1 + 2: oracle equivalence and Parseval on one corpus -----

void criterion_1_and_2() {
    Criterion c1(1, "coefficient agrees with the definitional oracle");
    Criterion c2(2, "Parseval: both sides equal w");
    auto corpus100 = mixed_corpus(100, 4, 10, 0xC0FFEE);
    double worst_coeff = 0, worst_parseval = 0;
    for (const auto& e : corpus100) {
        MatrixFn fn = to_matrix_fn(e.program);
        auto brute = all_coefficients_bruteforce(fn);
        const std::size_t n = e.program.length();
        for (std::uint64_t sv = 0; sv < (std::uint64_t(1) << n); ++sv) {
            BitString s = BitString::from_u64(n, sv);
            worst_coeff =
                std::max(worst_coeff, coefficient(e.program, s).max_abs_diff(brute[sv]));
        }
        auto [lhs, rhs] = parseval_check(fn);
        worst_parseval = std::max({worst_parseval, std::abs(lhs - e.program.w),
                                   std::abs(rhs - e.program.w)});
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "100 programs, all indices, max entry diff %.3g",
                  worst_coeff);
    c1.finish(worst_coeff <= 1e-9, buf);
    std::snprintf(buf, sizeof buf, "max |side - w| = %.3g", worst_parseval);
    c2.finish(worst_parseval <= 1e-9, buf);
}

// ---- criterion 3: level-k mass bound for regular programs ---------------

void criterion_3(const std::vector<CorpusEntry>& regular200) {
    Criterion c(3, "regular level mass <= (2w^2)^k for k in {1,2,3}");
    int violations = 0;
    double worst_margin = 0;  // value / bound
    for (const auto& e : regular200)
        for (int k = 1; k <= 3; ++k) {
            if (std::size_t(k) > e.program.length()) continue;
            MassReport r = level_mass(e.program, k);
            double bound = std::pow(2.0 * e.program.w * e.program.w, k);
            worst_margin = std::max(worst_margin, r.value / bound);
            if (r.value > bound * (1 + 1e-12)) ++violations;
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "200 programs, %d violations, max value/bound %.3g",
                  violations, worst_margin);
    c.finish(violations == 0, buf);
}

// ---- criterion 4: layer-sum weight bound and the potential inequality ---

void criterion_4(const std::vector<CorpusEntry>& regular200) {
    Criterion c(4, "suffix-coefficient weight <= 2w^2; per-step potential inequality");
    int violations = 0;
    for (const auto& e : regular200)
        if (brry_weight(e.program) > 2.0 * e.program.w * e.program.w + 1e-9) ++violations;

    Rng rng(0xB0B);
    int rho_violations = 0;
    for (int i = 0; i < 10000; ++i) {
        int w = 2 + int(rng.below(4));  // w <= 5
        BranchingProgram l = random_program(w, 1, ProgClass::regular, rng.next());
        MatrixW x(w);
        for (int u = 0; u < w; ++u)
            for (int v = 0; v < w; ++v) x.at(u, v) = 2.0 * rng.unit() - 1.0;
        double lhs = spectral_norm(l.layers[0].diff_matrix() * x);
        double rhs = 2.0 * (rho_potential(x) - rho_potential(l.layers[0].avg_matrix() * x));
        if (lhs > rhs + 1e-9) ++rho_violations;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "weight violations %d; potential violations %d/10000",
                  violations, rho_violations);
    c.finish(violations == 0 && rho_violations == 0, buf);
}

// ---- criterion 5: Cauchy-Schwarz level bound for general programs -------

void criterion_5() {
    Criterion c(5, "general level mass <= sqrt(w C(n,k)) for k <= 3");
    auto general200 = class_corpus(200, ProgClass::general, {2, 3, 4, 5, 6, 7, 8}, 4, 14, 0xA11);
    int violations = 0;
    double worst = 0;
    for (const auto& e : general200)
        for (int k = 1; k <= 3; ++k) {
            if (std::size_t(k) > e.program.length()) continue;
            MassReport r = level_mass(e.program, k);
            double bound = std::sqrt(double(e.program.w) *
                                     double(binomial(e.program.length(), k)));
            worst = std::max(worst, r.value / bound);
            if (r.value > bound * (1 + 1e-12)) ++violations;
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "200 programs, %d violations, max value/bound %.3g",
                  violations, worst);
    c.finish(violations == 0, buf);
}

// ---- criterion 6: restriction mass identity and bound --------------------

void criterion_6(const std::vector<CorpusEntry>& regular200) {
    Criterion c(6, "product-restriction mass: enumeration equals formula; bound at p<=1/4w^2");
    double worst_diff = 0;
    int bound_violations = 0, tested = 0;
    for (const auto& e : regular200) {
        const auto& p = e.program;
        if (p.length() > 12) continue;
        ++tested;
        auto nu = coefficient_norms(ordered_core(p), Norm::spectral);
        // subset sums: L2(B|_t) = sums[t] - nu[0]
        auto sums = nu;
        for (std::size_t i = 0; i < p.length(); ++i)
            for (std::size_t mask = 0; mask < sums.size(); ++mask)
                if (mask & (std::size_t(1) << i)) sums[mask] += sums[mask ^ (std::size_t(1) << i)];
        double prob = 1.0 / (4.0 * p.w * p.w);
        double enumerated = 0;
        for (std::size_t tv = 0; tv < sums.size(); ++tv)
            enumerated += std::pow(prob, std::popcount(tv)) *
                          std::pow(1 - prob, double(p.length() - std::popcount(tv))) *
                          (sums[tv] - nu[0]);
        double formula = 0;
        for (std::size_t sv = 1; sv < nu.size(); ++sv)
            formula += std::pow(prob, std::popcount(sv)) * nu[sv];
        worst_diff = std::max(worst_diff, std::abs(enumerated - formula));
        double bound = 2.0 * p.w * p.w * prob / (1.0 - 2.0 * p.w * p.w * prob);
        if (enumerated > bound * (1 + 1e-12)) ++bound_violations;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d programs with n<=12, max |enum-formula| %.3g, %d bound "
                  "violations", tested, worst_diff, bound_violations);
    c.finish(worst_diff <= 1e-9 && bound_violations == 0 && tested >= 50, buf);
}

// ---- criterion 7: mod-3 counter mass matches the closed form -------------

void criterion_7() {
    Criterion c(7, "mod-3 counter total mass ((1+sqrt3)/2)^n - 2^-n");
    double worst = 0, worst_brute = 0;
    for (std::size_t n = 3; n <= 12; ++n) {
        double mass = total_mass(mod3_program(n));
        double closed =
            std::pow((1.0 + std::sqrt(3.0)) / 2.0, double(n)) - std::exp2(-double(n));
        worst = std::max(worst, std::abs(mass - closed));
        if (n <= 10)
            worst_brute = std::max(
                worst_brute,
                std::abs(total_mass_bruteforce(to_matrix_fn(mod3_program(n))) - mass));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "n in 3..12, max |mass-closed| %.3g, max |bruteforce-mass| %.3g", worst,
                  worst_brute);
    c.finish(worst <= 1e-6 && worst_brute <= 1e-9, buf);
}

// ---- criterion 8: sampler guarantees --------------------------------------

void criterion_8() {
    Criterion c(8, "samplers: bias, exact joints, exact marginals, distances, tails");
    std::string detail;
    bool ok = true;

    // small-bias exhaustive bias
    double worst_ratio = 0;
    for (std::size_t n = 2; n <= 10; ++n)
        for (double mu : {0.5, 0.25, 0.125}) {
            double b = bias_of(small_bias_sampler(n, mu));
            worst_ratio = std::max(worst_ratio, b / mu);
            if (b > mu) ok = false;
        }
    detail += "bias/mu max " + std::to_string(worst_ratio);

    // exact k-wise joints on enumerable instances
    struct KW {
        std::size_t n;
        int d, k;
    };
    bool joints_exact = true;
    for (KW kw : {KW{4, 1, 2}, KW{4, 2, 2}, KW{3, 1, 3}, KW{6, 2, 2}}) {
        BitSampler s = kwise_sampler(kw.n, kw.d, kw.k);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
        for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << kw.n); ++sub) {
            if (std::popcount(sub) != kw.k) continue;
            std::map<std::uint64_t, std::uint64_t> joint;
            for (std::uint64_t v = 0; v < seeds; ++v) {
                BitString out = s.draw_from_u64(v);
                std::uint64_t key = 0;
                int pos = 0;
                for (std::size_t i = 0; i < kw.n; ++i)
                    if ((sub >> i) & 1) key |= std::uint64_t(out.get(i)) << pos++;
                joint[key] += 1;
            }
            using u128 = unsigned __int128;
            for (std::uint64_t key = 0; key < (std::uint64_t(1) << kw.k); ++key) {
                u128 num = 1;
                for (int i = 0; i < kw.k; ++i)
                    num *= ((key >> i) & 1) ? 1 : ((std::uint64_t(1) << kw.d) - 1);
                if ((u128(joint[key]) << (std::uint64_t(kw.d) * kw.k)) != num * seeds)
                    joints_exact = false;
            }
        }
    }
    if (!joints_exact) ok = false;
    detail += joints_exact ? "; joints exact" : "; JOINTS NOT EXACT";

    // almost-k-wise: marginals exactly 2^-d, pairwise distance within delta
    bool marginals_exact = true, distance_ok = true;
    struct AK {
        std::size_t n;
        int d, k;
        double delta;
    };
    for (AK ak : {AK{4, 2, 2, 0.5}, AK{4, 1, 2, 0.25}, AK{5, 2, 2, 1.0}}) {
        BitSampler s = almost_kwise_sampler(ak.n, ak.d, ak.k, ak.delta);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
        std::vector<std::uint64_t> ones(ak.n, 0);
        std::vector<std::vector<double>> pair(ak.n * ak.n, std::vector<double>(4, 0.0));
        for (std::uint64_t v = 0; v < seeds; ++v) {
            BitString out = s.draw_from_u64(v);
            for (std::size_t i = 0; i < ak.n; ++i) {
                ones[i] += out.get(i);
                for (std::size_t j = i + 1; j < ak.n; ++j)
                    pair[i * ak.n + j][2 * out.get(i) + out.get(j)] += 1.0;
            }
        }
        double p = std::ldexp(1.0, -ak.d);
        for (std::size_t i = 0; i < ak.n; ++i)
            if (ones[i] * (std::uint64_t(1) << ak.d) != seeds) marginals_exact = false;
        for (std::size_t i = 0; i < ak.n; ++i)
            for (std::size_t j = i + 1; j < ak.n; ++j) {
                double dist = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        double prod = (a ? p : 1 - p) * (b ? p : 1 - p);
                        double diff = pair[i * ak.n + j][2 * a + b] / double(seeds) - prod;
                        if (diff > 0) dist += diff;
                    }
                if (dist > ak.delta + 1e-12) distance_ok = false;
            }
    }
    if (!marginals_exact || !distance_ok) ok = false;
    detail += marginals_exact ? "; marginals exact" : "; MARGINALS OFF";
    detail += distance_ok ? "; distances within delta" : "; DISTANCE EXCEEDED";

    // exact tails below the limited-independence bound
    bool tails_ok = true;
    for (int k : {2, 4}) {
        BitSampler s = kwise_sampler(8, 1, k);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
        for (double zeta : {0.125, 0.25, 0.5}) {
            std::uint64_t bad = 0;
            for (std::uint64_t v = 0; v < seeds; ++v)
                if (std::abs(double(s.draw_from_u64(v).weight()) - 4.0) >= 8 * zeta) ++bad;
            if (double(bad) / double(seeds) > chernoff_bound(8, k, zeta, 0.0) + 1e-12)
                tails_ok = false;
        }
    }
    {
        BitSampler s = almost_kwise_sampler(4, 1, 2, 0.25);
        const std::uint64_t seeds = std::uint64_t(1) << s.seed_bits;
        for (double zeta : {0.25, 0.5}) {
            std::uint64_t bad = 0;
            for (std::uint64_t v = 0; v < seeds; ++v)
                if (std::abs(double(s.draw_from_u64(v).weight()) - 2.0) >= 4 * zeta) ++bad;
            if (double(bad) / double(seeds) > chernoff_bound(4, 2, zeta, 0.25) + 1e-12)
                tails_ok = false;
        }
    }
    if (!tails_ok) ok = false;
    detail += tails_ok ? "; tails bounded" : "; TAILS EXCEEDED";

    c.finish(ok, detail);
}

// ---- criterion 9: end-to-end distinguishing error -------------------------

void criterion_9() {
    Criterion c(9, "generator error <= eps across the perm and general corpora");
    const double eps = 0.25;
    DistinguishOptions opt;
    opt.exact_threshold_bits = 26;
    opt.mc_samples = 200000;
    int checked = 0, violations = 0, exact_runs = 0;
    double worst = 0;

    auto run = [&](const BranchingProgram& p, Variant variant) {
        PrgParams params = make_params(p.length(), p.w, eps, variant);
        ErrorEstimate est = distinguish_error(p, GeneratorSpec::prg(params, p.length()), opt);
        double value = est.value + (est.mode == ErrorEstimate::Mode::exact ? 0.0 : est.ci99);
        if (est.mode == ErrorEstimate::Mode::exact) ++exact_runs;
        worst = std::max(worst, value);
        ++checked;
        if (value > eps) ++violations;
    };

    Rng rng(0x9A17);
    for (std::size_t n = 8; n <= 24; ++n) {
        run(mod3_program(n), Variant::perm);
        for (int w : {2, 3}) {
            std::uint64_t s = rng.next();
            run(random_program(w, n, ProgClass::permutation, s), Variant::perm);
            run(random_program(w, n, ProgClass::permutation, s, true), Variant::perm);
        }
        for (int w : {2, 3, 4}) {
            std::uint64_t s = rng.next();
            run(random_program(w, n, ProgClass::general, s, w == 3), Variant::general);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d runs (%d exact), %d violations, worst value %.3g",
                  checked, exact_runs, violations, worst);
    c.finish(violations == 0, buf);
}

// ---- criterion 10: seed accounting and growth -----------------------------

void criterion_10() {
    Criterion c(10, "exact seed consumption; growth table fits a + b log2(n)^2");
    // cursor accounting over 1000 configurations
    Rng rng(0x5EED);
    int tested = 0, mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        PrgParams pr;
        std::uint64_t n;
        if (trial % 2 == 0) {
            int w = 2 + int(rng.below(3));
            double eps = 0.1 + 0.8 * rng.unit();
            n = 1 + rng.below(2000);
            pr = make_params(n, w, eps, rng.below(2) ? Variant::perm : Variant::general);
        } else {
            pr.variant = rng.below(2) ? Variant::perm : Variant::general;
            pr.w = 2;
            pr.eps = 0.5 + 0.49 * rng.unit();
            pr.d = 2 + int(rng.below(2));
            pr.k = 2 + int(rng.below(4));
            pr.log2_inv_delta = 10.0 + 10.0 * rng.unit();
            pr.log2_inv_mu = 10.0 + 10.0 * rng.unit();
            n = 200 + rng.below(600);
            if (!sampler_feasibility(pr, n).ok) continue;
        }
        std::uint64_t len = seed_length(pr, n);
        if (len > 200000) continue;
        SeedStream st(rng_bits(rng, std::size_t(len)));
        BitString out = generate(pr, n, st);
        if (out.size() != n || st.consumed() != len) ++mismatches;
        ++tested;
    }

    // growth table; the fit runs over the recursive regime (below the
    // step-2 threshold the seed is the output itself by construction)
    PrgParams perm = make_params(std::uint64_t(1) << 20, 2, 0.25, Variant::perm);
    std::vector<double> xs, ys;
    std::printf("    n, seed_length(perm), depth, seed_length(general)\n");
    for (int e = 6; e <= 20; ++e) {
        std::uint64_t n = std::uint64_t(1) << e;
        std::uint64_t sp = seed_length(make_params(n, 2, 0.25, Variant::perm), n);
        std::uint64_t sg = seed_length(make_params(n, 2, 0.25, Variant::general), n);
        PrgParams pn = make_params(n, 2, 0.25, Variant::perm);
        std::printf("    2^%-2d %12llu %6d %14llu\n", e, (unsigned long long)sp,
                    dry_run_depth(pn, n), (unsigned long long)sg);
        if (!pn.base_case(n)) {
            double l = std::log2(double(n));
            xs.push_back(l * l);
            ys.push_back(double(sp));
        }
    }
    double rel = 1.0;
    if (xs.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, m = double(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double b = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        double a = (sy - b * sx) / m;
        double rss = 0, yy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double r = ys[i] - (a + b * xs[i]);
            rss += r * r;
            yy += ys[i] * ys[i];
        }
        rel = std::sqrt(rss / yy);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d configs, %d mismatches; fit over %zu recursive points, rel residual %.3g",
                  tested, mismatches, xs.size(), rel);
    c.finish(tested >= 900 && mismatches == 0 && rel < 0.10, buf);
}

// ---- criterion 11: the worked select example ------------------------------

void criterion_11() {
    Criterion c(11, "select(0101000,1111111,00001) = 0101001");
    std::string got = select(BitString::from_string("0101000"),
                             BitString::from_string("1111111"),
                             BitString::from_string("00001"))
                          .to_string();
    c.finish(got == "0101001", "got " + got);
}

// ---- criterion 12: step-4 failure frequency -------------------------------

void criterion_12() {
    Criterion c(12, "step-4 failure frequency <= 2 eps at reachable configs");
    // In-range parameters keep every desk-scale run in the base case, so
    // step 4 is exercised at a custom configuration that satisfies the
    // failure lemma's hypotheses: p = 1/4, T delta-almost 8-wise with
    // delta = 2^-32, n above the step-2 threshold (2304 at eps = 0.25).
    const double eps = 0.25;
    const std::uint64_t n = 2560;
    const int d = 2, k = 4;
    const double log2_inv_delta = 32.0;
    PrgParams pr;
    pr.variant = Variant::perm;
    pr.w = 2;
    pr.eps = eps;
    pr.d = d;
    bool reachable = !pr.base_case(n);

    const std::uint64_t trials = 100000;
    std::uint64_t failures = 0;
    std::uint64_t step4_min = (n + (std::uint64_t(1) << (d + 1)) - 1) >> (d + 1);
    int m = almost_kwise_field_size_log2(std::size_t(n), d, 2 * k, log2_inv_delta);
    std::uint64_t seed_bits = 2 * std::uint64_t(m) + d;
    Rng rng(0x57E4);
    for (std::uint64_t i = 0; i < trials; ++i) {
        SeedStream st(rng_bits(rng, std::size_t(seed_bits)));
        BitString t = almost_kwise_mask_log2(std::size_t(n), d, 2 * k, log2_inv_delta, st);
        if (t.weight() < step4_min) ++failures;
    }
    double freq = double(failures) / double(trials);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "n=%llu p=1/4 reachable=%s: %llu/%llu failures (freq %.3g <= %.3g)",
                  (unsigned long long)n, reachable ? "yes" : "no",
                  (unsigned long long)failures, (unsigned long long)trials, freq, 2 * eps);
    c.finish(reachable && freq <= 2 * eps, buf);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();

    criterion_1_and_2();
    auto regular200 = class_corpus(200, ProgClass::regular, {2, 3, 4}, 4, 16, 0x3E6);
    criterion_3(regular200);
    criterion_4(regular200);
    criterion_5();
    criterion_6(regular200);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();

    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s: %d criterion(s) failed [total %.1fs]\n",
                g_failures ? "FAILURE" : "SUCCESS", g_failures, total);
    return g_failures ? 1 : 0;
}
