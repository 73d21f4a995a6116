#pragma once

#include <vector>

namespace bpf {

// Dense w x w real matrix. Rows index start states, columns final states.
class MatrixW {
public:
    MatrixW() = default;
    explicit MatrixW(int w) : w_(w), a_(std::size_t(w) * w, 0.0) {}

    static MatrixW identity(int w);
    static MatrixW constant(int w, double v);

    int width() const { return w_; }
    double& at(int u, int v) { return a_[std::size_t(u) * w_ + v]; }
    double at(int u, int v) const { return a_[std::size_t(u) * w_ + v]; }

    MatrixW operator*(const MatrixW& o) const;
    MatrixW operator+(const MatrixW& o) const;
    MatrixW operator-(const MatrixW& o) const;
    MatrixW& operator+=(const MatrixW& o);
    MatrixW& operator*=(double s);
    MatrixW scaled(double s) const;
    MatrixW transpose() const;

    bool is_stochastic(double tol) const;
    bool is_doubly_stochastic(double tol) const;

    double frobenius_norm() const;
    double max_abs() const;
    double max_abs_diff(const MatrixW& o) const;

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

private:
    int w_ = 0;
    std::vector<double> a_;
};

// Largest singular value, by power iteration on M^T M with a deterministic
// start vector (all ones plus an index-linear perturbation), relative
// tolerance 1e-12, iteration cap 10000.
double spectral_norm(const MatrixW& m);

struct SpectralResult {
    double value;
    int iterations;
    double residual;  // last relative change of the Rayleigh quotient
};
SpectralResult spectral_norm_detail(const MatrixW& m);

double frobenius_norm(const MatrixW& m);

// Sum over unordered row pairs of the Euclidean distance between the rows.
double rho_potential(const MatrixW& m);

// Default tolerance for stochasticity checks.
inline constexpr double kMatrixTol = 1e-9;

}  // namespace bpf
