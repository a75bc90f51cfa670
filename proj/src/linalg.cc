#include "mwloc/linalg.h"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "mwloc/errors.h"

namespace mwloc {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0;
    for (double x : data_) {
        s += x * x;
    }
    return std::sqrt(s);
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t j = 0; j < cols_; j++) {
        for (std::size_t i = j + 1; i < rows_; i++) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

Matrix Tridiagonal::to_dense() const {
    std::size_t n = dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = diag[i];
        if (i + 1 < n) {
            m(i, i + 1) = off[i];
            m(i + 1, i) = off[i];
        }
    }
    return m;
}

namespace {

void check_square_symmetric(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw DomainError("eigensolver needs a non-empty square matrix");
    }
    double scale = 0;
    for (std::size_t j = 0; j < a.cols(); j++) {
        for (std::size_t i = 0; i < a.rows(); i++) {
            scale = std::max(scale, std::abs(a(i, j)));
        }
    }
    if (!a.is_symmetric(1e-12 * std::max(scale, 1.0))) {
        throw DomainError("eigensolver input is not symmetric");
    }
}

lapack_int as_lapack(std::size_t n) {
    if (n > 1u << 30) {
        throw ResourceError("matrix too large for dense LAPACK");
    }
    return static_cast<lapack_int>(n);
}

}  // namespace

Spectrum eigensolve_symmetric(const Matrix& a) {
    check_square_symmetric(a);
    lapack_int n = as_lapack(a.rows());
    Spectrum s;
    s.eigenvectors = a;
    s.eigenvalues.resize(a.rows());
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, s.eigenvectors.data(), n,
                                     s.eigenvalues.data());
    if (info != 0) {
        throw NumericError("dsyevd failed with info=" + std::to_string(info));
    }
    return s;
}

TridiagonalForm::TridiagonalForm(const Matrix& a) {
    check_square_symmetric(a);
    lapack_int n = as_lapack(a.rows());
    reflectors_ = a;
    tri_.diag.resize(a.rows());
    tri_.off.resize(a.rows() > 0 ? a.rows() - 1 : 0);
    tau_.resize(std::max<std::size_t>(a.rows(), 2) - 1);
    std::vector<double> e(std::max<std::size_t>(a.rows(), 2) - 1);
    lapack_int info = LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', n, reflectors_.data(), n,
                                     tri_.diag.data(), e.data(), tau_.data());
    if (info != 0) {
        throw NumericError("dsytrd failed with info=" + std::to_string(info));
    }
    std::copy(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(tri_.off.size()), tri_.off.begin());
    reduced_ = true;
}

TridiagonalForm::TridiagonalForm(Tridiagonal t) : tri_(std::move(t)) {
    if (tri_.diag.empty() || tri_.off.size() + 1 != tri_.diag.size()) {
        throw DomainError("tridiagonal needs n diagonal and n-1 off-diagonal entries");
    }
}

std::vector<double> TridiagonalForm::eigenvalues() const {
    std::vector<double> d = tri_.diag;
    std::vector<double> e = tri_.off;
    e.push_back(0.0);
    lapack_int info = LAPACKE_dsterf(as_lapack(d.size()), d.data(), e.data());
    if (info != 0) {
        throw NumericError("dsterf failed with info=" + std::to_string(info));
    }
    return d;
}

std::size_t TridiagonalForm::count_below(double x) const {
    // Sturm sequence: signs of the pivots of LDL^T of (T - x I).
    const auto& d = tri_.diag;
    const auto& e = tri_.off;
    std::size_t count = 0;
    double q = d[0] - x;
    const double tiny = 1e-300;
    for (std::size_t i = 0;; i++) {
        if (q == 0.0) {
            q = -tiny;
        }
        if (q < 0) {
            count++;
        }
        if (i + 1 == d.size()) {
            break;
        }
        q = d[i + 1] - x - e[i] * e[i] / q;
    }
    return count;
}

Spectrum TridiagonalForm::eigenpairs(std::size_t first, std::size_t last) const {
    std::size_t n = dim();
    if (first >= last || last > n) {
        throw DomainError("eigenpair window out of range");
    }
    std::vector<double> d = tri_.diag;
    std::vector<double> e = tri_.off;
    e.push_back(0.0);
    std::size_t k = last - first;
    std::vector<double> w(n);
    Matrix z(n, k);
    std::vector<lapack_int> isuppz(2 * k);
    lapack_int found = 0;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', as_lapack(n), d.data(), e.data(), 0.0,
                                     0.0, static_cast<lapack_int>(first + 1), static_cast<lapack_int>(last),
                                     0.0, &found, w.data(), z.data(), as_lapack(n), isuppz.data());
    if (info != 0 || static_cast<std::size_t>(found) != k) {
        throw NumericError("dstevr failed with info=" + std::to_string(info));
    }
    if (reduced_ && n > 1) {
        info = LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', as_lapack(n), as_lapack(k),
                              const_cast<double*>(reflectors_.data()), as_lapack(n),
                              const_cast<double*>(tau_.data()), z.data(), as_lapack(n));
        if (info != 0) {
            throw NumericError("dormtr failed with info=" + std::to_string(info));
        }
    }
    Spectrum s;
    s.eigenvalues.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    s.eigenvectors = std::move(z);
    return s;
}

double residual_norm(const Matrix& a, double lambda, std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        double r = -lambda * x[i];
        for (std::size_t j = 0; j < a.cols(); j++) {
            r += a(i, j) * x[j];
        }
        s += r * r;
    }
    return std::sqrt(s);
}

double max_residual(const Matrix& a, const Spectrum& s) {
    double worst = 0;
    for (std::size_t k = 0; k < s.eigenvalues.size(); k++) {
        worst = std::max(worst, residual_norm(a, s.eigenvalues[k], s.eigenvectors.column(k)));
    }
    return worst;
}

double orthonormality_error(const Spectrum& s) {
    const Matrix& v = s.eigenvectors;
    double worst = 0;
    for (std::size_t a = 0; a < v.cols(); a++) {
        for (std::size_t b = a; b < v.cols(); b++) {
            double dot = 0;
            for (std::size_t i = 0; i < v.rows(); i++) {
                dot += v(i, a) * v(i, b);
            }
            worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

std::pair<std::size_t, std::size_t> select_window(std::span<const double> eigenvalues,
                                                  std::size_t count, const EigenSelector& sel) {
    std::size_t n = eigenvalues.size();
    if (count == 0 || count > n) {
        throw DomainError("eigenstate count must lie in [1, dimension]");
    }
    if (sel.kind == Selection::MedianIndex) {
        std::size_t first = (n - count) / 2;
        return {first, first + count};
    }
    // Grow a window outward from the insertion point of `energy`.
    auto pos = static_cast<std::size_t>(
        std::lower_bound(eigenvalues.begin(), eigenvalues.end(), sel.energy) - eigenvalues.begin());
    std::size_t lo = pos, hi = pos;
    while (hi - lo < count) {
        if (lo == 0) {
            hi++;
        } else if (hi == n) {
            lo--;
        } else if (std::abs(eigenvalues[lo - 1] - sel.energy) <= std::abs(eigenvalues[hi] - sel.energy)) {
            lo--;
        } else {
            hi++;
        }
    }
    return {lo, hi};
}

}  // namespace mwloc
