#include "bpfourier/prg.hpp"

#include <cmath>
#include <stdexcept>

#include "bpfourier/errors.hpp"
#include "bpfourier/samplers.hpp"

namespace bpf {

const char* to_string(Variant v) { return v == Variant::perm ? "perm" : "general"; }

Variant variant_from_string(const std::string& s) {
    if (s == "perm") return Variant::perm;
    if (s == "general") return Variant::general;
    throw std::invalid_argument("unknown variant: " + s);
}

double PrgParams::p() const { return std::ldexp(1.0, -d); }
double PrgParams::delta() const { return std::exp2(-log2_inv_delta); }
double PrgParams::mu() const { return std::exp2(-log2_inv_mu); }

double PrgParams::base_threshold() const {
    double l = std::log2(2.0 / eps);
    if (variant == Variant::perm) {
        double t = 4.0 * l / p();
        return t * t;
    }
    return 16.0 * l / p();
}

bool PrgParams::base_case(std::uint64_t n) const { return double(n) <= base_threshold(); }

// minimal integer >= x, with a small guard against representation noise at
// exact integers
static int min_int_at_least(double x) { return int(std::ceil(x - 1e-9)); }

PrgParams make_params(std::uint64_t n, int w, double eps, Variant variant) {
    if (n < 1) throw std::invalid_argument("make_params: n must be >= 1");
    if (w < 2) throw std::invalid_argument("make_params: w must be >= 2");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("make_params: eps must be in (0,1)");
    PrgParams pr;
    pr.variant = variant;
    pr.w = w;
    pr.eps = eps;
    const double log2_inv_eps = -std::log2(eps);
    if (variant == Variant::perm) {
        pr.d = min_int_at_least(std::log2(4.0 * w * w));
        pr.k = min_int_at_least(std::log2(4.0 * std::sqrt(double(w))) +
                                4.0 * std::log2(double(n)) + log2_inv_eps);
        pr.log2_inv_delta = log2_inv_eps + 4.0 * pr.k * std::log2(2.0 * w);
        pr.log2_inv_mu = log2_inv_eps + pr.k * std::log2(2.0 * w * w);
    } else {
        pr.d = min_int_at_least(std::log2(2.0 * std::sqrt(double(n))));
        pr.k = min_int_at_least(std::log2(2.0 * w) + 4.0 * std::log2(double(n)) + log2_inv_eps);
        pr.log2_inv_delta = 0.0;
        pr.log2_inv_mu = log2_inv_eps + 0.5 * (std::log2(double(w)) + pr.k * std::log2(double(n)));
    }
    if (pr.k < 1 || pr.d < 1)
        throw std::invalid_argument("make_params: degenerate parameters (k or d below 1)");
    return pr;
}

PrgParams rescaled_params(std::uint64_t n, int w, double eps, Variant variant) {
    PrgParams raw = make_params(n, w, eps, variant);
    int r = dry_run_depth(raw, n);
    if (r < 1) r = 1;
    double c = (variant == Variant::perm ? 6.0 : 4.0) * std::sqrt(double(w)) * r;
    return make_params(n, w, eps / c, variant);
}

BitString select(const BitString& t, const BitString& x, const BitString& y) {
    const std::size_t n = t.size();
    if (x.size() != n) throw std::invalid_argument("select: |x| != |t|");
    if (y.size() + t.weight() < n) throw std::invalid_argument("select: y too short");
    BitString out(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i)
        out.set(i, t.get(i) ? x.get(i) : y.get(next++));
    return out;
}

bool GenTrace::failed() const {
    for (const auto& l : levels)
        if (l.failed_step4) return true;
    return false;
}

// floor(n (1 - p/2)) = n - ceil(n / 2^(d+1)), in exact integer arithmetic
static std::uint64_t next_length(std::uint64_t n, int d) {
    std::uint64_t denom_log = std::uint64_t(d) + 1;
    std::uint64_t q = (n + (std::uint64_t(1) << denom_log) - 1) >> denom_log;
    return n - q;
}

static std::uint64_t t_sampler_bits(const PrgParams& pr, std::uint64_t n) {
    if (pr.variant == Variant::perm)
        return 2 * std::uint64_t(almost_kwise_field_size_log2(std::size_t(n), pr.d, 2 * pr.k,
                                                              pr.log2_inv_delta)) +
               std::uint64_t(pr.d);
    return kwise_seed_len(std::size_t(n), pr.d, 2 * pr.k);
}

static std::uint64_t x_sampler_bits(const PrgParams& pr, std::uint64_t n) {
    return 2 * std::uint64_t(small_bias_field_size_log2(std::size_t(n), pr.log2_inv_mu));
}

std::vector<LevelPlan> seed_plan(const PrgParams& params, std::uint64_t n) {
    std::vector<LevelPlan> plan;
    std::uint64_t cur = n;
    while (true) {
        LevelPlan lp;
        lp.n = cur;
        if (cur == 0 || params.base_case(cur)) {
            lp.base_case = true;
            lp.base_bits = cur;
            plan.push_back(lp);
            return plan;
        }
        lp.t_bits = t_sampler_bits(params, cur);
        lp.x_bits = x_sampler_bits(params, cur);
        plan.push_back(lp);
        cur = next_length(cur, params.d);
    }
}

std::uint64_t seed_length(const PrgParams& params, std::uint64_t n) {
    std::uint64_t total = 0;
    for (const auto& lp : seed_plan(params, n)) total += lp.t_bits + lp.x_bits + lp.base_bits;
    return total;
}

std::uint64_t seed_length(std::uint64_t n, int w, double eps, Variant variant) {
    return seed_length(make_params(n, w, eps, variant), n);
}

int dry_run_depth(const PrgParams& params, std::uint64_t n) {
    return int(seed_plan(params, n).size()) - 1;  // levels before the base case
}

SamplerFeasibility sampler_feasibility(const PrgParams& params, std::uint64_t n) {
    SamplerFeasibility f;
    for (const auto& lp : seed_plan(params, n)) {
        if (lp.base_case) break;
        int mt = params.variant == Variant::perm
                     ? almost_kwise_field_size_log2(std::size_t(lp.n), params.d, 2 * params.k,
                                                    params.log2_inv_delta)
                     : kwise_field_size(std::size_t(lp.n), params.d);
        int mx = small_bias_field_size_log2(std::size_t(lp.n), params.log2_inv_mu);
        f.m_t = std::max(f.m_t, mt);
        f.m_x = std::max(f.m_x, mx);
    }
    f.ok = f.m_t <= 64 && f.m_x <= 64;
    return f;
}

static BitString gen_rec(const PrgParams& pr, std::uint64_t n, SeedStream& seed, int level,
                         GenTrace* trace) {
    LevelRecord rec;
    rec.level = level;
    rec.n = n;

    if (n == 0 || pr.base_case(n)) {
        rec.base_case = true;
        rec.base_bits = n;
        BitString out = seed.read_bitstring(std::size_t(n));
        if (trace) trace->levels.push_back(rec);
        return out;
    }

    // step 3: the selection mask
    std::size_t before_t = seed.consumed();
    BitString t;
    if (pr.variant == Variant::perm) {
        int mt = almost_kwise_field_size_log2(std::size_t(n), pr.d, 2 * pr.k, pr.log2_inv_delta);
        if (mt > 64)
            throw field_overflow("generate: T sampler needs GF(2^" + std::to_string(mt) +
                                 ") at n=" + std::to_string(n) + " (k=" + std::to_string(pr.k) +
                                 ", d=" + std::to_string(pr.d) + "); supported m <= 64");
        t = almost_kwise_mask_log2(std::size_t(n), pr.d, 2 * pr.k, pr.log2_inv_delta, seed);
    } else {
        t = kwise_bits(std::size_t(n), pr.d, 2 * pr.k, seed);
    }
    rec.t_bits = seed.consumed() - before_t;
    rec.t_weight = t.weight();

    // step 4: |T| < p n / 2 iff |T| < ceil(n / 2^(d+1)), in exact integers
    std::uint64_t step4_min = (n + (std::uint64_t(1) << (pr.d + 1)) - 1) >> (pr.d + 1);
    if (rec.t_weight < step4_min) {
        rec.failed_step4 = true;
        std::uint64_t rest = x_sampler_bits(pr, n) + seed_length(pr, next_length(n, pr.d));
        seed.skip(std::size_t(rest));
        rec.skipped_bits = rest;
        if (trace) trace->levels.push_back(rec);
        return BitString::zeros(std::size_t(n));
    }

    // step 6 bits follow the T bits in the layout; draw X before recursing
    std::size_t before_x = seed.consumed();
    int mx = small_bias_field_size_log2(std::size_t(n), pr.log2_inv_mu);
    if (mx > 64)
        throw field_overflow("generate: X sampler needs GF(2^" + std::to_string(mx) +
                             ") at n=" + std::to_string(n) + " (k=" + std::to_string(pr.k) +
                             "); supported m <= 64");
    BitString x = small_bias_log2(std::size_t(n), pr.log2_inv_mu, seed);
    rec.x_bits = seed.consumed() - before_x;
    if (trace) trace->levels.push_back(rec);

    // step 5: recursive tail of length floor(n(1-p/2)) >= n - |T|
    BitString u = gen_rec(pr, next_length(n, pr.d), seed, level + 1, trace);

    // step 7
    return select(t, x, u);
}

BitString generate(const PrgParams& params, std::uint64_t n, SeedStream& seed) {
    return gen_rec(params, n, seed, 0, nullptr);
}

BitString generate_traced(const PrgParams& params, std::uint64_t n, SeedStream& seed,
                          GenTrace& trace) {
    std::size_t before = seed.consumed();
    BitString out = gen_rec(params, n, seed, 0, &trace);
    trace.consumed = seed.consumed() - before;
    return out;
}

}  // namespace bpf
