#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mwloc {

// Closed-form predictions for the mean Meyer-Wallach entanglement <Q> of
// localized random vectors. `N` is the register dimension 2^n, `M` the number
// of occupied basis states and `inv_ipr` the ensemble mean <1/xi>. Arguments
// outside a formula's admissible domain raise DomainError.

/// Random subset, uncorrelated phases: (N-2)/(N-1) (1 - <1/xi>).
double q_random_subset(std::uint64_t big_n, double inv_ipr);
/// Haar vector on M random positions: (M-1)/(M+1) (N-2)/(N-1).
double q_cue_subset(std::uint64_t big_n, std::uint64_t m);
/// Equal amplitudes and random phases on M random positions: (M-1)/M (N-2)/(N-1).
double q_equal_amp_subset(std::uint64_t big_n, std::uint64_t m);
/// Full Haar vector: (N-2)/(N+1).
double q_lubkin(std::uint64_t big_n);
/// q_random_subset with N replaced by N/2.
double q_sym_halved(std::uint64_t big_n, double inv_ipr);
/// Vectors confined to one popcount-parity sector: N/(N-2) (1 - <1/xi>).
double q_spin_sector(std::uint64_t big_n, double inv_ipr);
/// Homogeneous delocalization inside a fixed-popcount band, n -> infinity.
double q_band_limit(double eta);

/// Triangle wave |1 - |1 - x||, x in [0, 3).
double g_fun(double x);
/// 2^r g(x / 2^r), x in [0, 3 * 2^r).
double g_r(unsigned r, double x);
/// x^2 - (2/3) x (x^2 - 1) / 2^r on [0, 2^r], mirrored about 2^r on (2^r, 2^{r+1}].
double chi_r(unsigned r, std::int64_t x);

enum class WindowSide { UStart, VStart };

struct KT {
    std::int64_t k = 0;  // nonzero components of u
    std::int64_t t = 0;  // positions occupied in both u and v
};

/// (k, t) for qubit r of an adjacent window of length M whose first component
/// sits at offset c_r of a block of u (UStart) or v (VStart); m_r = M mod 2^{r+1}.
KT k_t_adjacent(unsigned r, std::int64_t c_r, std::int64_t m_r, std::int64_t m, WindowSide side);

/// Exact <Q> for adjacent windows of length 2 <= M <= N/2 averaged over all N starts.
double q_adjacent_exact(unsigned n, std::uint64_t m, double inv_ipr);
/// Simplified form, exact at M = 2^{r0}; r0 = log2 M for other M.
double q_adjacent_pow2(unsigned n, double m, double inv_ipr);
/// Brute-force reference for q_adjacent_exact: builds every window support
/// explicitly and sums [k(M-k) - t] / (M(M-1)) over all qubits and starts.
double q_adjacent_oracle(unsigned n, std::uint64_t m, double inv_ipr);
/// Cosine-modulated windows cos(pi j / 2), M = 2^{r0}, r0 < n.
double q_cosine(unsigned n, std::uint64_t m);

/// lim n->inf of n * q_adjacent_exact(n, M, inv_ipr).
double adjacent_tail_constant(std::uint64_t m, double inv_ipr);
/// lim n->inf of n * q_cosine(n, M), with r0 = log2 M taken real-valued.
double cosine_tail_constant(double m);

enum class FormulaId {
    RandomSubset,
    CueSubset,
    EqualAmpSubset,
    SymHalved,
    SpinSector,
    BandLimit,
    AdjacentExact,
    AdjacentPow2,
    Cosine,
    Lubkin,
};

struct TheoryInputs {
    unsigned n = 0;          // qubits; N = 2^n
    double m = 0;            // support size
    double inv_ipr = -1;     // <1/xi>
    double eta = -1;         // band filling n_b / n
};

struct Prediction {
    FormulaId id;
    std::vector<std::pair<std::string, double>> inputs;
    double value = 0;
};

Prediction evaluate(FormulaId id, const TheoryInputs& in);

FormulaId parse_formula(const std::string& name);
std::string formula_name(FormulaId id);
std::vector<std::string> formula_names();

}  // namespace mwloc
