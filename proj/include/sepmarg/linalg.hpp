#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "sepmarg/errors.hpp"

namespace sepmarg {

using cxd = std::complex<double>;

/// Dense real matrix, row-major.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static RealMatrix identity(std::size_t n) {
        RealMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    RealMatrix transpose() const {
        RealMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RealMatrix& operator+=(const RealMatrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    RealMatrix& operator-=(const RealMatrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    RealMatrix& operator*=(double s) {
        for (double& v : a_) v *= s;
        return *this;
    }

    friend RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
    friend RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
    friend RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
    friend RealMatrix operator*(double s, RealMatrix a) { return a *= s; }

    friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
        RealMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                const double* brow = b.a_.data() + k * b.cols_;
                double* crow = c.a_.data() + i * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        return c;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    void symmetrize() {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j) {
                const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = v;
                (*this)(j, i) = v;
            }
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, cxd fill = cxd(0.0, 0.0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cxd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    cxd operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    ComplexMatrix conj() const {
        ComplexMatrix t(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) t.a_[k] = std::conj(a_[k]);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cxd s) {
        for (cxd& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cxd s) { return a *= s; }
    friend ComplexMatrix operator*(cxd s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cxd aik = a(i, k);
                if (aik == cxd(0.0, 0.0)) continue;
                const cxd* brow = b.a_.data() + k * b.cols_;
                cxd* crow = c.a_.data() + i * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        return c;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cxd& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    cxd trace() const {
        cxd s = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    /// Relative Hermiticity deviation ||m - m^dag||_F / max(||m||_F, floor).
    double hermiticity_defect() const {
        if (!square()) return 1.0;
        double dev = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                dev += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
        const double ref = std::max(frobenius_norm(), 1e-14);
        return std::sqrt(dev) / ref;
    }

    bool is_hermitian(double tol = 1e-12) const {
        return square() && hermiticity_defect() <= tol;
    }

    /// Averages away the anti-Hermitian part (assumes the defect is small).
    void make_hermitian() {
        for (std::size_t i = 0; i < rows_; ++i) {
            (*this)(i, i) = cxd((*this)(i, i).real(), 0.0);
            for (std::size_t j = i + 1; j < cols_; ++j) {
                const cxd v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
                (*this)(i, j) = v;
                (*this)(j, i) = std::conj(v);
            }
        }
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cxd> a_;
};

inline double real_inner(const RealMatrix& a, const RealMatrix& b) {
    double s = 0.0;
    const std::size_t n = a.rows() * a.cols();
    const double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t k = 0; k < n; ++k) s += pa[k] * pb[k];
    return s;
}

/// Real part of tr(a^dag b); the Hilbert-Schmidt inner product for Hermitian a, b.
inline double herm_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += std::real(std::conj(a(i, j)) * b(i, j));
    return s;
}

namespace detail {

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
/// d: diagonal (n), e: subdiagonal (n, e[0] unused). If z != nullptr, the
/// rotations accumulate into its columns. Eigenvalues land in d, unsorted.
template <typename Vec, typename ApplyRot>
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, ApplyRot&& rotate) {
    const std::size_t n = d.size();
    if (n == 0) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (++iter == 80) throw NoConvergenceError("tridiagonal QL: iteration cap hit");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    rotate(i, c, s);
                }
                if (r == 0.0 && m - l > 1) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    (void)sizeof(Vec);
}

} // namespace detail

struct RealEig {
    std::vector<double> eigenvalues; ///< ascending
    RealMatrix eigenvectors;         ///< columns
};

struct HermEig {
    std::vector<double> eigenvalues; ///< ascending
    ComplexMatrix eigenvectors;      ///< columns, unitary
};

/// Eigendecomposition of a real symmetric matrix (Householder tridiagonalization
/// followed by implicit-shift QL). Eigenvalues ascending.
inline RealEig real_sym_eig(const RealMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw NonSquareError("real_sym_eig: matrix not square");
    RealMatrix z = m;
    std::vector<double> d(n), e(n, 0.0);

    // Householder reduction (tred2 layout: z accumulates the orthogonal factor).
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k)
                        z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += z(i, k) * z(k, j);
                for (std::size_t k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            z(j, i) = 0.0;
            z(i, j) = 0.0;
        }
    }

    detail::tridiag_ql<std::vector<double>>(d, e, [&](std::size_t i, double c, double s) {
        for (std::size_t k = 0; k < n; ++k) {
            const double f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
        }
    });

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    RealEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = z(k, order[j]);
    }
    return out;
}

/// Eigenvalues only of a symmetric tridiagonal matrix (for Jacobi-matrix roots).
inline std::vector<double> sym_tridiag_eigenvalues(std::vector<double> diag,
                                                   std::vector<double> sub) {
    const std::size_t n = diag.size();
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) e[i] = sub[i - 1];
    detail::tridiag_ql<std::vector<double>>(diag, e, [](std::size_t, double, double) {});
    std::sort(diag.begin(), diag.end());
    return diag;
}

/// Eigendecomposition of a complex Hermitian matrix. The matrix is first
/// reduced to real symmetric tridiagonal form by complex Householder
/// reflections and a diagonal phase rotation, then handed to the QL core.
/// Eigenvalues ascending; eigenvector columns satisfy m = V diag(lambda) V^dag.
inline HermEig herm_eig(const ComplexMatrix& m, double herm_tol = 1e-12) {
    const std::size_t n = m.rows();
    if (!m.square()) throw NonSquareError("herm_eig: matrix not square");
    if (m.hermiticity_defect() > herm_tol)
        throw NotHermitianError("herm_eig: input fails Hermiticity check");

    ComplexMatrix a = m;
    a.make_hermitian();
    ComplexMatrix q = ComplexMatrix::identity(n);

    // Householder reduction to Hermitian tridiagonal, accumulating q.
    std::vector<cxd> v(n), p(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        if (xnorm2 <= 0.0) continue;
        const double xnorm = std::sqrt(xnorm2);
        const cxd x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        const cxd phase = (ax0 > 0.0) ? x0 / ax0 : cxd(1.0, 0.0);
        const cxd alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 <= 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // p = beta * A v over the trailing block, K = (beta/2) v^dag p, w = p - K v.
        for (std::size_t i = k + 1; i < n; ++i) {
            cxd s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            p[i] = beta * s;
        }
        cxd kc = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) kc += std::conj(v[i]) * p[i];
        kc *= 0.5 * beta;
        for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - kc * v[i];

        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);

        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }

        // q <- q (I - beta v v^dag), applied to the trailing columns.
        for (std::size_t r = 0; r < n; ++r) {
            cxd s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += q(r, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= s * std::conj(v[j]);
        }
    }

    // Phase-rotate the tridiagonal so the subdiagonal becomes real nonnegative.
    std::vector<double> d(n), e(n, 0.0);
    cxd u = 1.0;
    std::vector<cxd> phases(n, cxd(1.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a(i, i).real();
        if (i > 0) {
            const cxd ei = a(i, i - 1);
            const double aei = std::abs(ei);
            if (aei > 0.0) u *= ei / aei;
            e[i] = aei;
            phases[i] = u;
        }
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 1; j < n; ++j) q(r, j) *= phases[j];

    detail::tridiag_ql<std::vector<double>>(d, e, [&](std::size_t i, double c, double s) {
        for (std::size_t k = 0; k < n; ++k) {
            const cxd f = q(k, i + 1);
            q(k, i + 1) = s * q(k, i) + c * f;
            q(k, i) = c * q(k, i) - s * f;
        }
    });

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

    HermEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = q(k, order[j]);
    }
    return out;
}

/// In-place lower Cholesky of a symmetric positive definite matrix.
/// Returns false if a pivot drops below tol * scale (matrix not PD).
inline bool cholesky(RealMatrix& m, double tol = 1e-14) {
    const std::size_t n = m.rows();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
    if (scale == 0.0) scale = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = m(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= m(j, k) * m(j, k);
        if (!(s > tol * scale)) return false;
        const double ljj = std::sqrt(s);
        m(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double t = m(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= m(i, k) * m(j, k);
            m(i, j) = t / ljj;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = 0.0;
    return true;
}

/// Solves L x = b with L lower triangular.
inline void forward_subst(const RealMatrix& l, std::vector<double>& b) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
        b[i] = s / l(i, i);
    }
}

/// Solves L^T x = b with L lower triangular.
inline void backward_subst(const RealMatrix& l, std::vector<double>& b) {
    const std::size_t n = l.rows();
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * b[k];
        b[i] = s / l(i, i);
    }
}

/// Real-symmetric embedding of a Hermitian matrix m = X + iY as [[X,-Y],[Y,X]].
/// The embedding doubles each eigenvalue's multiplicity and preserves PSD-ness.
inline RealMatrix embed_real(const ComplexMatrix& m, double herm_tol = 1e-12) {
    if (!m.square()) throw NonSquareError("embed_real: matrix not square");
    if (m.hermiticity_defect() > herm_tol)
        throw NotHermitianError("embed_real: input fails Hermiticity check");
    const std::size_t n = m.rows();
    RealMatrix r(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = 0.5 * (m(i, j).real() + m(j, i).real());
            const double y = 0.5 * (m(i, j).imag() - m(j, i).imag());
            r(i, j) = x;
            r(n + i, n + j) = x;
            r(i, n + j) = -y;
            r(n + i, j) = y;
        }
    return r;
}

/// Recovers the Hermitian matrix from its real-symmetric embedding.
inline ComplexMatrix unembed_real(const RealMatrix& r) {
    const std::size_t two_n = r.rows();
    if (r.cols() != two_n || two_n % 2 != 0)
        throw ShapeMismatchError("unembed_real: expected even-dimensional square matrix");
    const std::size_t n = two_n / 2;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = 0.5 * (r(i, j) + r(n + i, n + j));
            const double y = 0.5 * (r(n + i, j) - r(i, n + j));
            m(i, j) = cxd(x, y);
        }
    m.make_hermitian();
    return m;
}

/// Trace norm (sum of singular values) of a square complex matrix, computed from
/// the spectrum of the Hermitian dilation [[0, m],[m^dag, 0]].
inline double trace_norm(const ComplexMatrix& m) {
    if (!m.square()) throw NonSquareError("trace_norm: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 0.0;
    ComplexMatrix h(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            h(i, n + j) = m(i, j);
            h(n + j, i) = std::conj(m(i, j));
        }
    const HermEig eig = herm_eig(h, 1.0); // dilation is Hermitian by construction
    double s = 0.0;
    for (double lam : eig.eigenvalues)
        if (lam > 0.0) s += lam;
    return s;
}

inline double min_eigenvalue(const ComplexMatrix& m) {
    return herm_eig(m).eigenvalues.front();
}

} // namespace sepmarg
