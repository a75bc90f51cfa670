#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mwloc {

using cplx = std::complex<double>;

/// Largest register handled densely.
inline constexpr unsigned kMaxQubits = 26;

/// Pure state of n qubits in the register basis.
///
/// Index convention is little-endian: basis index i = sum_r i_r 2^r, so qubit r
/// is bit r of the integer index. Values are immutable once constructed.
class Statevector {
   public:
    Statevector(unsigned n_qubits, std::vector<cplx> amplitudes);

    static Statevector basis(unsigned n_qubits, std::uint64_t index);

    unsigned n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const { return amplitudes_; }
    const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const;

   private:
    unsigned n_qubits_;
    std::vector<cplx> amplitudes_;
};

/// Split of a state by the value of one qubit: u holds the components with bit
/// `qubit` clear, v those with it set, both in ascending index order.
struct Partition {
    unsigned qubit;
    std::vector<cplx> u;
    std::vector<cplx> v;
};

/// The three scalars <u|u>, <v|v>, <u|v> of a partition, computed without
/// materializing u and v.
struct PartitionScalars {
    double uu = 0;
    double vv = 0;
    cplx uv = 0;
};

/// Index of the j-th component of u for qubit r (insert a zero at bit r).
inline std::size_t insert_zero_bit(std::size_t j, unsigned r) {
    std::size_t low = j & ((std::size_t{1} << r) - 1);
    return ((j >> r) << (r + 1)) | low;
}

Partition partition_by_qubit(const Statevector& psi, unsigned r);
PartitionScalars partition_scalars(const Statevector& psi, unsigned r);

/// <u|u><v|v> - |<u|v>|^2.
double gram_determinant(std::span<const cplx> u, std::span<const cplx> v);
double gram_determinant(const PartitionScalars& s);

/// Conjugate-linear in the first argument.
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);

Statevector normalize(const Statevector& psi);
std::vector<cplx> normalize(std::vector<cplx> amplitudes);

/// Number of qubits for a power-of-two dimension; throws otherwise.
unsigned qubits_for_dim(std::size_t dim);

}  // namespace mwloc
