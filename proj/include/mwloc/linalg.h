#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mwloc {

/// Column-major dense real matrix.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

    double frobenius_norm() const;
    bool is_symmetric(double tol = 0.0) const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Real symmetric tridiagonal matrix: `diag` of length n, `off` of length n-1.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t dim() const { return diag.size(); }
    Matrix to_dense() const;
};

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending. Column k of
/// `eigenvectors` belongs to eigenvalues[k]. When `sector_map` is non-empty the
/// eigenvectors live on a symmetry block and sector_map[j] is the register
/// index of block coordinate j.
struct Spectrum {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    std::vector<std::uint64_t> sector_map;
};

/// Full dense diagonalization (LAPACK dsyevd).
Spectrum eigensolve_symmetric(const Matrix& a);

/// Householder tridiagonal form of a symmetric matrix, kept so that selected
/// eigenpairs can be computed without a full diagonalization: Sturm counts and
/// all eigenvalues in O(n^2), a window of k eigenvectors in O(nk) plus the
/// back-transformation.
class TridiagonalForm {
   public:
    explicit TridiagonalForm(const Matrix& a);
    explicit TridiagonalForm(Tridiagonal t);

    std::size_t dim() const { return tri_.dim(); }
    const Tridiagonal& tridiagonal() const { return tri_; }

    std::vector<double> eigenvalues() const;
    /// Number of eigenvalues strictly below x.
    std::size_t count_below(double x) const;
    /// Eigenpairs with ascending indices in [first, last).
    Spectrum eigenpairs(std::size_t first, std::size_t last) const;

   private:
    Tridiagonal tri_;
    bool reduced_ = false;
    Matrix reflectors_;
    std::vector<double> tau_;
};

/// ||A x - lambda x||_2.
double residual_norm(const Matrix& a, double lambda, std::span<const double> x);
/// Largest residual over all pairs in `s` (sector_map ignored).
double max_residual(const Matrix& a, const Spectrum& s);
/// max |<x_i|x_j> - delta_ij|.
double orthonormality_error(const Spectrum& s);

enum class Selection { MedianIndex, NearestEnergy };

struct EigenSelector {
    Selection kind = Selection::NearestEnergy;
    double energy = 0.0;
};

/// Window [first, last) of `count` consecutive indices into the ascending
/// `eigenvalues`: centered on the midpoint (MedianIndex) or the `count`
/// eigenvalues closest to `energy` (ties go to the lower index).
std::pair<std::size_t, std::size_t> select_window(std::span<const double> eigenvalues,
                                                  std::size_t count, const EigenSelector& sel);

}  // namespace mwloc
