#include "bpfourier/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bpf {

MatrixW MatrixW::identity(int w) {
    MatrixW m(w);
    for (int i = 0; i < w; ++i) m.at(i, i) = 1.0;
    return m;
}

MatrixW MatrixW::constant(int w, double v) {
    MatrixW m(w);
    for (auto& x : m.a_) x = v;
    return m;
}

MatrixW MatrixW::operator*(const MatrixW& o) const {
    if (w_ != o.w_) throw std::invalid_argument("matrix product: width mismatch");
    MatrixW r(w_);
    for (int i = 0; i < w_; ++i)
        for (int k = 0; k < w_; ++k) {
            double a = at(i, k);
            if (a == 0.0) continue;
            for (int j = 0; j < w_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

MatrixW MatrixW::operator+(const MatrixW& o) const {
    MatrixW r = *this;
    r += o;
    return r;
}

MatrixW MatrixW::operator-(const MatrixW& o) const {
    if (w_ != o.w_) throw std::invalid_argument("matrix difference: width mismatch");
    MatrixW r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

MatrixW& MatrixW::operator+=(const MatrixW& o) {
    if (w_ != o.w_) throw std::invalid_argument("matrix sum: width mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

MatrixW& MatrixW::operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
}

MatrixW MatrixW::scaled(double s) const {
    MatrixW r = *this;
    r *= s;
    return r;
}

MatrixW MatrixW::transpose() const {
    MatrixW r(w_);
    for (int i = 0; i < w_; ++i)
        for (int j = 0; j < w_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool MatrixW::is_stochastic(double tol) const {
    for (int i = 0; i < w_; ++i) {
        double s = 0;
        for (int j = 0; j < w_; ++j) {
            if (at(i, j) < -tol) return false;
            s += at(i, j);
        }
        if (std::abs(s - 1.0) > tol) return false;
    }
    return true;
}

bool MatrixW::is_doubly_stochastic(double tol) const {
    return is_stochastic(tol) && transpose().is_stochastic(tol);
}

double MatrixW::frobenius_norm() const {
    double s = 0;
    for (auto x : a_) s += x * x;
    return std::sqrt(s);
}

double MatrixW::max_abs() const {
    double m = 0;
    for (auto x : a_) m = std::max(m, std::abs(x));
    return m;
}

double MatrixW::max_abs_diff(const MatrixW& o) const {
    if (w_ != o.w_) throw std::invalid_argument("max_abs_diff: width mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
}

double frobenius_norm(const MatrixW& m) { return m.frobenius_norm(); }

SpectralResult spectral_norm_detail(const MatrixW& m) {
    const int w = m.width();
    if (w == 0) return {0.0, 0, 0.0};

    // gram = M^T M, symmetric positive semidefinite
    MatrixW gram = m.transpose() * m;
    double scale = gram.max_abs();
    if (scale == 0.0) return {0.0, 0, 0.0};

    std::vector<double> v(w), nv(w);
    for (int i = 0; i < w; ++i) v[i] = 1.0 + 1e-3 * i;

    const int cap = 10000;
    const double tol = 1e-12;
    double lambda = 0.0, residual = 0.0;
    int it = 0, restarts = 0;
    for (; it < cap; ++it) {
        double vn = 0;
        for (int i = 0; i < w; ++i) vn += v[i] * v[i];
        for (int i = 0; i < w; ++i) {
            double s = 0;
            for (int j = 0; j < w; ++j) s += gram.at(i, j) * v[j];
            nv[i] = s;
        }
        double dot = 0;
        for (int i = 0; i < w; ++i) dot += v[i] * nv[i];
        double next = dot / vn;  // Rayleigh quotient
        residual = std::abs(next - lambda) / std::max(next, scale * 1e-300);
        lambda = next;
        double nn = 0;
        for (int i = 0; i < w; ++i) nn += nv[i] * nv[i];
        nn = std::sqrt(nn);
        if (nn == 0.0) {
            // start vector fell in the kernel of a nonzero M^T M; restart
            // from the next basis vector (gram has a nonzero column)
            if (restarts >= w) return {0.0, it + 1, 0.0};
            for (int i = 0; i < w; ++i) v[i] = (i == restarts) ? 1.0 : 0.0;
            ++restarts;
            lambda = 0.0;
            continue;
        }
        for (int i = 0; i < w; ++i) v[i] = nv[i] / nn;
        if (it > 0 && residual <= tol) { ++it; break; }
    }
    return {std::sqrt(std::max(lambda, 0.0)), it, residual};
}

double spectral_norm(const MatrixW& m) { return spectral_norm_detail(m).value; }

double rho_potential(const MatrixW& m) {
    const int w = m.width();
    double total = 0;
    for (int u = 0; u < w; ++u)
        for (int v = u + 1; v < w; ++v) {
            double s = 0;
            for (int j = 0; j < w; ++j) {
                double d = m.at(u, j) - m.at(v, j);
                s += d * d;
            }
            total += std::sqrt(s);
        }
    return total;
}

}  // namespace bpf
