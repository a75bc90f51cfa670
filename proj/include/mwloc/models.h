#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwloc/core.h"
#include "mwloc/linalg.h"
#include "mwloc/rng.h"

namespace mwloc {

// ---- spin chain with random fields and random xx couplings ----

/// H = sum_i Gamma_i sigma^z_i + sum_{i<j} J_ij sigma^x_i sigma^x_j with
/// Gamma_i uniform in [delta0 - delta/2, delta0 + delta/2] and J_ij uniform in
/// [-j, j]. sigma^z |0> = +|0>.
struct SpinModelParams {
    unsigned n = 0;
    double delta0 = 1.0;
    double delta = 1.0;
    double j = 0.1;

    void validate() const;
};

/// One disorder realization. coupling[a * n + b] = J_ab (symmetric, zero diagonal).
struct SpinDisorder {
    unsigned n = 0;
    std::vector<double> gamma;
    std::vector<double> coupling;
};

inline constexpr unsigned kMaxDenseSpinQubits = 12;   // full 2^n x 2^n matrix
inline constexpr unsigned kMaxSectorSpinQubits = 13;  // per-parity blocks

/// Draw order: gamma_0 .. gamma_{n-1}, then J_ab for a < b in lexicographic order.
SpinDisorder draw_spin_disorder(const SpinModelParams& params, CounterRng& rng);

/// Full register matrix.
Matrix spin_hamiltonian(const SpinDisorder& disorder);
Matrix build_spin_hamiltonian(const SpinModelParams& params, CounterRng& rng);
/// Restriction of H to the ascending index list `basis` (a union of parity
/// sectors, or bands when treated approximately).
Matrix spin_hamiltonian_block(const SpinDisorder& disorder, std::span<const std::uint64_t> basis);

struct ParitySectors {
    std::vector<std::uint64_t> even;
    std::vector<std::uint64_t> odd;
};

ParitySectors parity_sectors(unsigned n);

/// All indices with popcount n_b, ascending.
std::vector<std::uint64_t> band_basis(unsigned n, unsigned n_b);

// ---- Anderson chain and quantum smallworld ----

/// Open chain of N = 2^n sites, on-site energies Normal(0, w^2), unit hopping.
struct AndersonParams {
    unsigned n = 0;
    double w = 1.0;

    void validate() const;
};

/// Anderson chain plus round(p N) extra unit links between random distinct
/// vertex pairs (no self-loops, no chain edges, no duplicates).
struct SmallworldParams {
    AndersonParams base;
    double p = 0.0;

    void validate() const;
};

struct Link {
    std::uint64_t a;
    std::uint64_t b;
};

struct SparseSymmetric {
    Tridiagonal chain;
    std::vector<Link> links;

    std::size_t dim() const { return chain.dim(); }
    Matrix to_dense() const;
};

inline constexpr unsigned kMaxAndersonQubits = 22;
inline constexpr unsigned kMaxSmallworldQubits = 12;

/// Draw order: the N on-site energies.
Tridiagonal build_anderson(const AndersonParams& params, CounterRng& rng);
/// Draw order: the Anderson energies, then link endpoints by rejection.
SparseSymmetric build_smallworld(const SmallworldParams& params, CounterRng& rng);

// ---- eigenstates ----

struct Eigenstate {
    double energy;
    Statevector state;
};

/// Scatters a sector-coordinate vector onto the full 2^n register.
Statevector embed_sector_vector(std::span<const double> vec, std::span<const std::uint64_t> sector,
                                unsigned n);

/// `count` eigenstates of an already computed spectrum, chosen by `sel`,
/// embedded into the n-qubit register when the spectrum carries a sector map.
std::vector<Eigenstate> central_eigenstates(const Spectrum& spectrum, unsigned n, std::size_t count,
                                            const EigenSelector& sel);

/// Same selection computed directly from a tridiagonal chain without full
/// diagonalization.
std::vector<Eigenstate> central_eigenstates(const Tridiagonal& h, std::size_t count,
                                            const EigenSelector& sel);
/// Smallworld: falls back to the tridiagonal path when there are no links.
std::vector<Eigenstate> central_eigenstates(const SparseSymmetric& h, std::size_t count,
                                            const EigenSelector& sel);
/// Spin model: selection over the merged spectrum of both parity sectors.
std::vector<Eigenstate> spin_central_eigenstates(const SpinDisorder& disorder, std::size_t count,
                                                 const EigenSelector& sel);
/// Spin model: every eigenstate, diagonalized per parity sector, energy-ascending.
std::vector<Eigenstate> spin_all_eigenstates(const SpinDisorder& disorder);

/// Parity sector (by popcount) holding all weight of `psi`; throws if mixed.
std::vector<std::uint64_t> sector_of(const Statevector& psi, double tol = 1e-12);

/// Weight of psi in each popcount band 0..n.
std::vector<double> band_weights(const Statevector& psi);
/// IPR of psi projected onto the indices with popcount n_b.
double band_ipr(const Statevector& psi, unsigned n_b);

}  // namespace mwloc
