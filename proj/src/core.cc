#include "mwloc/core.h"

#include <bit>
#include <cmath>
#include <string>

#include "mwloc/errors.h"

namespace mwloc {

Statevector::Statevector(unsigned n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw DomainError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw DomainError("amplitude array length must be 2^n_qubits");
    }
}

Statevector Statevector::basis(unsigned n_qubits, std::uint64_t index) {
    if (n_qubits == 0 || n_qubits > kMaxQubits || index >= (std::uint64_t{1} << n_qubits)) {
        throw DomainError("basis index out of range");
    }
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    amps[index] = 1.0;
    return Statevector(n_qubits, std::move(amps));
}

double Statevector::norm_squared() const {
    double s = 0;
    for (const auto& a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

unsigned qubits_for_dim(std::size_t dim) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw DomainError("dimension must be a power of two >= 2");
    }
    return static_cast<unsigned>(std::countr_zero(dim));
}

static void check_qubit(const Statevector& psi, unsigned r) {
    if (r >= psi.n_qubits()) {
        throw DomainError("qubit index " + std::to_string(r) + " out of range for " +
                          std::to_string(psi.n_qubits()) + " qubits");
    }
}

Partition partition_by_qubit(const Statevector& psi, unsigned r) {
    check_qubit(psi, r);
    std::size_t half = psi.dim() / 2;
    std::size_t bit = std::size_t{1} << r;
    Partition p{r, std::vector<cplx>(half), std::vector<cplx>(half)};
    for (std::size_t j = 0; j < half; j++) {
        std::size_t i = insert_zero_bit(j, r);
        p.u[j] = psi[i];
        p.v[j] = psi[i | bit];
    }
    return p;
}

PartitionScalars partition_scalars(const Statevector& psi, unsigned r) {
    check_qubit(psi, r);
    std::size_t half = psi.dim() / 2;
    std::size_t bit = std::size_t{1} << r;
    PartitionScalars s;
    for (std::size_t j = 0; j < half; j++) {
        std::size_t i = insert_zero_bit(j, r);
        const cplx& a = psi[i];
        const cplx& b = psi[i | bit];
        s.uu += std::norm(a);
        s.vv += std::norm(b);
        s.uv += std::conj(a) * b;
    }
    return s;
}

double gram_determinant(const PartitionScalars& s) {
    return s.uu * s.vv - std::norm(s.uv);
}

double gram_determinant(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) {
        throw DomainError("gram_determinant: length mismatch");
    }
    PartitionScalars s;
    for (std::size_t j = 0; j < u.size(); j++) {
        s.uu += std::norm(u[j]);
        s.vv += std::norm(v[j]);
        s.uv += std::conj(u[j]) * v[j];
    }
    return gram_determinant(s);
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw DomainError("inner_product: length mismatch");
    }
    cplx s = 0;
    for (std::size_t j = 0; j < a.size(); j++) {
        s += std::conj(a[j]) * b[j];
    }
    return s;
}

std::vector<cplx> normalize(std::vector<cplx> amplitudes) {
    double s = 0;
    for (const auto& a : amplitudes) {
        s += std::norm(a);
    }
    if (!(s > 0) || !std::isfinite(s)) {
        throw DomainError("cannot normalize a zero or non-finite vector");
    }
    double scale = 1.0 / std::sqrt(s);
    for (auto& a : amplitudes) {
        a *= scale;
    }
    return amplitudes;
}

Statevector normalize(const Statevector& psi) {
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    return Statevector(psi.n_qubits(), normalize(std::move(amps)));
}

}  // namespace mwloc
