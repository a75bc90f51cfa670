#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mwloc/core.h"

namespace mwloc {

/// Which formula meyer_wallach_q evaluates. `Checked` evaluates both and
/// throws NumericError if they disagree by more than kRouteTolerance.
enum class QRoute { Gram, Purity, Checked };

inline constexpr double kRouteTolerance = 1e-10;

/// Pair correlators averaged over the n single-qubit partitions.
/// cxx: internal pairs i != j inside u and inside v; cxy: all cross pairs.
struct Correlators {
    double cxx = 0;
    double cxy = 0;
};

struct MeasureReport {
    double q = 0;
    double ipr = 0;
    double inv_ipr = 0;
    std::vector<double> purities;
    double cxx = 0;
    double cxy = 0;
};

/// Participation ratio (sum |psi_i|^2)^2 / sum |psi_i|^4 in [1, N].
double ipr(const Statevector& psi);
/// sum |psi_i|^4 / (sum |psi_i|^2)^2.
double inv_ipr(const Statevector& psi);

/// tr rho_r^2 = <u|u>^2 + <v|v>^2 + 2|<u|v>|^2 for the reduction onto qubit r.
double qubit_purity(const Statevector& psi, unsigned r);

double meyer_wallach_q(const Statevector& psi, QRoute route = QRoute::Gram);

Correlators correlators(const Statevector& psi);

/// Correlators restricted to pairs of positions whose register index lies in
/// `support` (e.g. a parity sector). `support` must be sorted and unique.
Correlators correlators_on_support(const Statevector& psi, std::span<const std::uint64_t> support);

/// 1/xi + N(N/2 - 1) cxx + (N^2/2) cxy, which equals 1 for normalized input.
double normalization_identity(const Statevector& psi, const Correlators& c);

MeasureReport measure(const Statevector& psi, QRoute route = QRoute::Gram);

}  // namespace mwloc
