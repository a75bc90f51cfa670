#include "mwloc/models.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "mwloc/errors.h"

namespace mwloc {

namespace {

std::uint64_t dim_of(unsigned n) { return std::uint64_t{1} << n; }

}  // namespace

void SpinModelParams::validate() const {
    if (n < 2) {
        throw DomainError("spin model needs n >= 2");
    }
    if (n > kMaxSectorSpinQubits) {
        throw ResourceError("spin model with n=" + std::to_string(n) + " exceeds dense limit n <= " +
                            std::to_string(kMaxSectorSpinQubits));
    }
    if (delta < 0 || j < 0) {
        throw DomainError("spin model needs delta >= 0 and J >= 0");
    }
}

SpinDisorder draw_spin_disorder(const SpinModelParams& params, CounterRng& rng) {
    params.validate();
    SpinDisorder d;
    d.n = params.n;
    d.gamma.resize(params.n);
    for (auto& g : d.gamma) {
        g = rng.uniform(params.delta0 - params.delta / 2, params.delta0 + params.delta / 2);
    }
    d.coupling.assign(params.n * params.n, 0.0);
    for (unsigned a = 0; a < params.n; a++) {
        for (unsigned b = a + 1; b < params.n; b++) {
            double jab = rng.uniform(-params.j, params.j);
            d.coupling[a * params.n + b] = jab;
            d.coupling[b * params.n + a] = jab;
        }
    }
    return d;
}

namespace {

double spin_diagonal(const SpinDisorder& d, std::uint64_t i) {
    double e = 0;
    for (unsigned r = 0; r < d.n; r++) {
        e += (i >> r & 1) ? -d.gamma[r] : d.gamma[r];
    }
    return e;
}

}  // namespace

Matrix spin_hamiltonian(const SpinDisorder& d) {
    if (d.n > kMaxDenseSpinQubits) {
        throw ResourceError("full spin matrix limited to n <= " + std::to_string(kMaxDenseSpinQubits));
    }
    std::vector<std::uint64_t> all(dim_of(d.n));
    for (std::uint64_t i = 0; i < all.size(); i++) {
        all[i] = i;
    }
    return spin_hamiltonian_block(d, all);
}

Matrix build_spin_hamiltonian(const SpinModelParams& params, CounterRng& rng) {
    if (params.n > kMaxDenseSpinQubits) {
        throw ResourceError("full spin matrix limited to n <= " + std::to_string(kMaxDenseSpinQubits));
    }
    return spin_hamiltonian(draw_spin_disorder(params, rng));
}

Matrix spin_hamiltonian_block(const SpinDisorder& d, std::span<const std::uint64_t> basis) {
    std::uint64_t big_n = dim_of(d.n);
    std::vector<std::int64_t> position(big_n, -1);
    for (std::size_t k = 0; k < basis.size(); k++) {
        if (basis[k] >= big_n) {
            throw DomainError("basis index out of range");
        }
        position[basis[k]] = static_cast<std::int64_t>(k);
    }
    Matrix h(basis.size(), basis.size());
    for (std::size_t k = 0; k < basis.size(); k++) {
        std::uint64_t i = basis[k];
        h(k, k) = spin_diagonal(d, i);
        for (unsigned a = 0; a < d.n; a++) {
            for (unsigned b = a + 1; b < d.n; b++) {
                std::uint64_t j = i ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
                std::int64_t col = position[j];
                if (col >= 0) {
                    h(k, static_cast<std::size_t>(col)) += d.coupling[a * d.n + b];
                }
            }
        }
    }
    return h;
}

ParitySectors parity_sectors(unsigned n) {
    if (n < 1 || n > kMaxQubits) {
        throw DomainError("qubit count out of range");
    }
    ParitySectors s;
    s.even.reserve(dim_of(n) / 2);
    s.odd.reserve(dim_of(n) / 2);
    for (std::uint64_t i = 0; i < dim_of(n); i++) {
        (std::popcount(i) & 1 ? s.odd : s.even).push_back(i);
    }
    return s;
}

std::vector<std::uint64_t> band_basis(unsigned n, unsigned n_b) {
    if (n < 1 || n > kMaxQubits || n_b > n) {
        throw DomainError("band needs 0 <= n_b <= n");
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < dim_of(n); i++) {
        if (static_cast<unsigned>(std::popcount(i)) == n_b) {
            out.push_back(i);
        }
    }
    return out;
}

void AndersonParams::validate() const {
    if (n < 2) {
        throw DomainError("Anderson chain needs n >= 2");
    }
    if (n > kMaxAndersonQubits) {
        throw ResourceError("Anderson chain limited to n <= " + std::to_string(kMaxAndersonQubits));
    }
    if (w < 0) {
        throw DomainError("disorder strength w must be >= 0");
    }
}

void SmallworldParams::validate() const {
    base.validate();
    if (base.n > kMaxSmallworldQubits) {
        throw ResourceError("smallworld dense diagonalization limited to n <= " +
                            std::to_string(kMaxSmallworldQubits));
    }
    if (p < 0) {
        throw DomainError("link density p must be >= 0");
    }
}

Tridiagonal build_anderson(const AndersonParams& params, CounterRng& rng) {
    params.validate();
    std::uint64_t big_n = dim_of(params.n);
    Tridiagonal t;
    t.diag.resize(big_n);
    for (auto& e : t.diag) {
        e = params.w * rng.normal();
    }
    t.off.assign(big_n - 1, 1.0);
    return t;
}

SparseSymmetric build_smallworld(const SmallworldParams& params, CounterRng& rng) {
    params.validate();
    SparseSymmetric h;
    h.chain = build_anderson(params.base, rng);
    std::uint64_t big_n = h.dim();
    auto links = static_cast<std::uint64_t>(std::llround(params.p * static_cast<double>(big_n)));
    std::uint64_t available = big_n * (big_n - 1) / 2 - (big_n - 1);
    if (links > available) {
        throw DomainError("p too large: " + std::to_string(links) + " links requested, only " +
                          std::to_string(available) + " vertex pairs available");
    }
    std::set<std::pair<std::uint64_t, std::uint64_t>> used;
    while (h.links.size() < links) {
        std::uint64_t a = rng.below(big_n);
        std::uint64_t b = rng.below(big_n);
        if (a > b) {
            std::swap(a, b);
        }
        if (b - a < 2 || !used.emplace(a, b).second) {
            continue;
        }
        h.links.push_back({a, b});
    }
    return h;
}

Matrix SparseSymmetric::to_dense() const {
    Matrix m = chain.to_dense();
    for (const auto& l : links) {
        m(l.a, l.b) += 1.0;
        m(l.b, l.a) += 1.0;
    }
    return m;
}

Statevector embed_sector_vector(std::span<const double> vec, std::span<const std::uint64_t> sector,
                                unsigned n) {
    if (vec.size() != sector.size()) {
        throw DomainError("sector vector length does not match sector size");
    }
    std::vector<cplx> amps(dim_of(n));
    for (std::size_t k = 0; k < vec.size(); k++) {
        if (sector[k] >= amps.size()) {
            throw DomainError("sector index out of range");
        }
        amps[sector[k]] = vec[k];
    }
    return Statevector(n, std::move(amps));
}

namespace {

Statevector column_state(const Spectrum& s, std::size_t k, unsigned n) {
    auto col = s.eigenvectors.column(k);
    if (!s.sector_map.empty()) {
        return embed_sector_vector(col, s.sector_map, n);
    }
    if (col.size() != dim_of(n)) {
        throw DomainError("eigenvector length is not 2^n");
    }
    std::vector<cplx> amps(col.begin(), col.end());
    return Statevector(n, std::move(amps));
}

}  // namespace

std::vector<Eigenstate> central_eigenstates(const Spectrum& spectrum, unsigned n, std::size_t count,
                                            const EigenSelector& sel) {
    auto [first, last] = select_window(spectrum.eigenvalues, count, sel);
    std::vector<Eigenstate> out;
    out.reserve(last - first);
    for (std::size_t k = first; k < last; k++) {
        out.push_back({spectrum.eigenvalues[k], column_state(spectrum, k, n)});
    }
    return out;
}

namespace {

std::vector<Eigenstate> window_from_form(const TridiagonalForm& form, std::size_t count,
                                         const EigenSelector& sel) {
    if (count == 0 || count > form.dim()) {
        throw DomainError("eigenstate count must lie in [1, dimension]");
    }
    std::size_t first, last;
    if (sel.kind == Selection::MedianIndex) {
        first = (form.dim() - count) / 2;
        last = first + count;
    } else {
        // The count nearest eigenvalues lie within count indices of the
        // Sturm count at the target energy.
        std::size_t below = form.count_below(sel.energy);
        std::size_t lo = below >= count ? below - count : 0;
        std::size_t hi = std::min(form.dim(), below + count);
        Spectrum candidates = form.eigenpairs(lo, hi);
        auto [a, b] = select_window(candidates.eigenvalues, count, sel);
        first = lo + a;
        last = lo + b;
    }
    Spectrum s = form.eigenpairs(first, last);
    unsigned n = qubits_for_dim(form.dim());
    return central_eigenstates(s, n, count, EigenSelector{Selection::MedianIndex, 0.0});
}

}  // namespace

std::vector<Eigenstate> central_eigenstates(const Tridiagonal& h, std::size_t count,
                                            const EigenSelector& sel) {
    return window_from_form(TridiagonalForm(h), count, sel);
}

std::vector<Eigenstate> central_eigenstates(const SparseSymmetric& h, std::size_t count,
                                            const EigenSelector& sel) {
    if (h.links.empty()) {
        return central_eigenstates(h.chain, count, sel);
    }
    return window_from_form(TridiagonalForm(h.to_dense()), count, sel);
}

std::vector<Eigenstate> spin_central_eigenstates(const SpinDisorder& disorder, std::size_t count,
                                                 const EigenSelector& sel) {
    ParitySectors sectors = parity_sectors(disorder.n);
    const std::vector<std::uint64_t>* maps[2] = {&sectors.even, &sectors.odd};
    TridiagonalForm forms[2] = {TridiagonalForm(spin_hamiltonian_block(disorder, sectors.even)),
                                TridiagonalForm(spin_hamiltonian_block(disorder, sectors.odd))};
    struct Level {
        double e;
        int sector;
        std::size_t index;
    };
    std::vector<Level> merged;
    for (int s = 0; s < 2; s++) {
        auto ev = forms[s].eigenvalues();
        for (std::size_t k = 0; k < ev.size(); k++) {
            merged.push_back({ev[k], s, k});
        }
    }
    std::stable_sort(merged.begin(), merged.end(), [](const Level& a, const Level& b) { return a.e < b.e; });
    std::vector<double> energies(merged.size());
    std::transform(merged.begin(), merged.end(), energies.begin(), [](const Level& l) { return l.e; });
    auto [first, last] = select_window(energies, count, sel);

    // Chosen levels form one contiguous index run per sector.
    std::size_t lo[2] = {SIZE_MAX, SIZE_MAX}, hi[2] = {0, 0};
    for (std::size_t k = first; k < last; k++) {
        int s = merged[k].sector;
        lo[s] = std::min(lo[s], merged[k].index);
        hi[s] = std::max(hi[s], merged[k].index + 1);
    }
    std::vector<Eigenstate> out;
    for (int s = 0; s < 2; s++) {
        if (lo[s] == SIZE_MAX) {
            continue;
        }
        Spectrum part = forms[s].eigenpairs(lo[s], hi[s]);
        part.sector_map = *maps[s];
        for (std::size_t k = 0; k < part.eigenvalues.size(); k++) {
            out.push_back({part.eigenvalues[k], column_state(part, k, disorder.n)});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Eigenstate& a, const Eigenstate& b) { return a.energy < b.energy; });
    return out;
}

std::vector<Eigenstate> spin_all_eigenstates(const SpinDisorder& disorder) {
    ParitySectors sectors = parity_sectors(disorder.n);
    std::vector<Eigenstate> out;
    out.reserve(dim_of(disorder.n));
    for (const auto* sector : {&sectors.even, &sectors.odd}) {
        Spectrum s = eigensolve_symmetric(spin_hamiltonian_block(disorder, *sector));
        s.sector_map = *sector;
        for (std::size_t k = 0; k < s.eigenvalues.size(); k++) {
            out.push_back({s.eigenvalues[k], column_state(s, k, disorder.n)});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Eigenstate& a, const Eigenstate& b) { return a.energy < b.energy; });
    return out;
}

std::vector<std::uint64_t> sector_of(const Statevector& psi, double tol) {
    double w[2] = {0, 0};
    for (std::uint64_t i = 0; i < psi.dim(); i++) {
        w[std::popcount(i) & 1] += std::norm(psi[i]);
    }
    ParitySectors s = parity_sectors(psi.n_qubits());
    if (w[1] <= tol) {
        return s.even;
    }
    if (w[0] <= tol) {
        return s.odd;
    }
    throw DomainError("state mixes parity sectors");
}

std::vector<double> band_weights(const Statevector& psi) {
    std::vector<double> w(psi.n_qubits() + 1, 0.0);
    for (std::uint64_t i = 0; i < psi.dim(); i++) {
        w[static_cast<std::size_t>(std::popcount(i))] += std::norm(psi[i]);
    }
    return w;
}

double band_ipr(const Statevector& psi, unsigned n_b) {
    if (n_b > psi.n_qubits()) {
        throw DomainError("band index out of range");
    }
    double s2 = 0, s4 = 0;
    for (std::uint64_t i = 0; i < psi.dim(); i++) {
        if (static_cast<unsigned>(std::popcount(i)) == n_b) {
            double p = std::norm(psi[i]);
            s2 += p;
            s4 += p * p;
        }
    }
    if (!(s4 > 0)) {
        throw DomainError("state has no weight in band");
    }
    return s2 * s2 / s4;
}

}  // namespace mwloc
