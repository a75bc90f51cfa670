#include "mwloc/ensembles.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mwloc/errors.h"

namespace mwloc {

namespace {

std::uint64_t dim_of(unsigned n) { return std::uint64_t{1} << n; }

// First m entries of a partial Fisher-Yates shuffle of `pool`.
std::vector<std::uint64_t> choose_positions(std::vector<std::uint64_t> pool, std::uint64_t m,
                                            CounterRng& rng) {
    for (std::uint64_t i = 0; i < m; i++) {
        std::uint64_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    return pool;
}

std::vector<cplx> random_phases(std::uint64_t m, CounterRng& rng) {
    std::vector<cplx> amps(m);
    double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& a : amps) {
        a = std::polar(scale, 2.0 * std::numbers::pi * rng.uniform());
    }
    return amps;
}

double cos_half_pi(std::uint64_t j) {
    switch (j & 3) {
        case 0:
            return 1.0;
        case 2:
            return -1.0;
        default:
            return 0.0;
    }
}

}  // namespace

void EnsembleSpec::validate(unsigned n) const {
    if (n == 0 || n > kMaxQubits) {
        throw DomainError("qubit count out of range");
    }
    std::uint64_t big_n = dim_of(n);
    bool uses_m = family != Family::ExpEnvelopeHaar;
    if (uses_m) {
        if (m < 1 || m > big_n) {
            throw DomainError("support size M must satisfy 1 <= M <= N");
        }
    }
    if (sector != Sector::None) {
        if (family != Family::RandomSubsetEqualAmp && family != Family::RandomSubsetHaar) {
            throw DomainError("parity sectors apply to random-subset families only");
        }
        if (m > big_n / 2) {
            throw DomainError("M exceeds the parity sector size N/2");
        }
    }
    if (family == Family::AdjacentWindow || family == Family::CosineWindow) {
        if (strict && m > big_n / 2) {
            throw DomainError("window length M > N/2 rejected in strict mode");
        }
    }
    if (family == Family::CosineWindow && m < 2) {
        throw DomainError("cosine window needs M >= 2");
    }
    if (family == Family::ExpEnvelopeHaar && !(loc_length > 0)) {
        throw DomainError("localization length must be positive");
    }
}

std::string EnsembleSpec::describe() const {
    std::ostringstream s;
    s << "family=" << family_name(family);
    if (family == Family::ExpEnvelopeHaar) {
        s << ";l=" << loc_length << ";envelope=" << (envelope == Envelope::TwoSided ? "two-sided" : "one-sided");
    } else {
        s << ";m=" << m;
    }
    if (family == Family::AdjacentWindow) {
        s << ";profile=" << (profile == Profile::Haar ? "haar" : "equal-amp");
    }
    if (sector != Sector::None) {
        s << ";sector=" << (sector == Sector::Even ? "even" : "odd");
    }
    return s.str();
}

std::vector<cplx> haar_unit_vector(std::uint64_t m, CounterRng& rng) {
    if (m == 0) {
        throw DomainError("haar_unit_vector: dimension must be positive");
    }
    std::vector<cplx> z(m);
    for (auto& c : z) {
        c = rng.complex_normal();
    }
    return normalize(std::move(z));
}

std::vector<std::uint64_t> parity_class(unsigned n, Sector sector) {
    std::uint64_t big_n = dim_of(n);
    std::vector<std::uint64_t> out;
    if (sector == Sector::None) {
        out.resize(big_n);
        for (std::uint64_t i = 0; i < big_n; i++) {
            out[i] = i;
        }
        return out;
    }
    unsigned want = sector == Sector::Odd ? 1u : 0u;
    out.reserve(big_n / 2);
    for (std::uint64_t i = 0; i < big_n; i++) {
        if ((std::popcount(i) & 1u) == want) {
            out.push_back(i);
        }
    }
    return out;
}

Statevector window_state(unsigned n, std::uint64_t start, std::span<const cplx> amplitudes) {
    std::uint64_t big_n = dim_of(n);
    if (amplitudes.size() > big_n) {
        throw DomainError("window longer than the register");
    }
    std::vector<cplx> amps(big_n);
    for (std::uint64_t j = 0; j < amplitudes.size(); j++) {
        amps[(start + j) % big_n] = amplitudes[j];
    }
    return Statevector(n, normalize(std::move(amps)));
}

Statevector cosine_window_state(unsigned n, std::uint64_t m, std::uint64_t c) {
    std::uint64_t big_n = dim_of(n);
    if (m < 2 || m > big_n) {
        throw DomainError("cosine window needs 2 <= M <= N");
    }
    std::vector<cplx> amps(big_n);
    for (std::uint64_t j = c + 1; j <= c + m; j++) {
        std::uint64_t idx = j % big_n;
        amps[idx] = cos_half_pi(idx);
    }
    return Statevector(n, normalize(std::move(amps)));
}

Sample sample(const EnsembleSpec& spec, unsigned n, RngHandle handle) {
    CounterRng rng(handle);
    return sample(spec, n, rng);
}

Sample sample(const EnsembleSpec& spec, unsigned n, CounterRng& rng) {
    spec.validate(n);
    std::uint64_t big_n = dim_of(n);
    switch (spec.family) {
        case Family::RandomSubsetEqualAmp:
        case Family::RandomSubsetHaar: {
            auto positions = choose_positions(parity_class(n, spec.sector), spec.m, rng);
            std::vector<cplx> values = spec.family == Family::RandomSubsetHaar
                                           ? haar_unit_vector(spec.m, rng)
                                           : random_phases(spec.m, rng);
            std::vector<cplx> amps(big_n);
            for (std::uint64_t k = 0; k < spec.m; k++) {
                amps[positions[k]] = values[k];
            }
            return {Statevector(n, normalize(std::move(amps))), std::move(positions)};
        }
        case Family::AdjacentWindow: {
            std::uint64_t c = rng.below(big_n);
            std::vector<cplx> values = spec.profile == Profile::Haar ? haar_unit_vector(spec.m, rng)
                                                                      : random_phases(spec.m, rng);
            std::vector<std::uint64_t> support(spec.m);
            for (std::uint64_t j = 0; j < spec.m; j++) {
                support[j] = (c + j) % big_n;
            }
            return {window_state(n, c, values), std::move(support)};
        }
        case Family::ExpEnvelopeHaar: {
            std::uint64_t c = rng.below(big_n);
            std::vector<cplx> amps(big_n);
            std::vector<std::uint64_t> support(big_n);
            for (std::uint64_t x = 0; x < big_n; x++) {
                std::uint64_t d = (x + big_n - c) % big_n;
                if (spec.envelope == Envelope::TwoSided) {
                    d = std::min(d, big_n - d);
                }
                amps[x] = rng.complex_normal() * std::exp(-static_cast<double>(d) / spec.loc_length);
                support[x] = x;
            }
            return {Statevector(n, normalize(std::move(amps))), std::move(support)};
        }
        case Family::CosineWindow: {
            std::uint64_t c = rng.below(big_n);
            std::vector<std::uint64_t> support(spec.m);
            for (std::uint64_t j = 0; j < spec.m; j++) {
                support[j] = (c + 1 + j) % big_n;
            }
            return {cosine_window_state(n, spec.m, c), std::move(support)};
        }
    }
    throw DomainError("unknown ensemble family");
}

Statevector shuffle_components(const Statevector& psi, CounterRng& rng,
                               std::span<const std::uint64_t> support) {
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    std::vector<cplx> values;
    values.reserve(support.size());
    for (auto idx : support) {
        if (idx >= psi.dim()) {
            throw DomainError("shuffle support index out of range");
        }
        values.push_back(amps[idx]);
    }
    for (std::size_t i = values.size(); i > 1; i--) {
        std::size_t j = rng.below(i);
        std::swap(values[i - 1], values[j]);
    }
    for (std::size_t k = 0; k < support.size(); k++) {
        amps[support[k]] = values[k];
    }
    return Statevector(psi.n_qubits(), std::move(amps));
}

Family parse_family(const std::string& name) {
    if (name == "equal-amp-subset") return Family::RandomSubsetEqualAmp;
    if (name == "haar-subset") return Family::RandomSubsetHaar;
    if (name == "adjacent") return Family::AdjacentWindow;
    if (name == "exp-envelope") return Family::ExpEnvelopeHaar;
    if (name == "cosine") return Family::CosineWindow;
    throw DomainError("unknown ensemble '" + name +
                      "' (expected equal-amp-subset, haar-subset, adjacent, exp-envelope, cosine)");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::RandomSubsetEqualAmp:
            return "equal-amp-subset";
        case Family::RandomSubsetHaar:
            return "haar-subset";
        case Family::AdjacentWindow:
            return "adjacent";
        case Family::ExpEnvelopeHaar:
            return "exp-envelope";
        case Family::CosineWindow:
            return "cosine";
    }
    return "unknown";
}

}  // namespace mwloc
