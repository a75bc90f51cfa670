#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwloc/core.h"
#include "mwloc/rng.h"

namespace mwloc {

enum class Family { RandomSubsetEqualAmp, RandomSubsetHaar, AdjacentWindow, ExpEnvelopeHaar, CosineWindow };
enum class Profile { EqualAmp, Haar };
enum class Sector { None, Even, Odd };
/// One-sided: exp(-((x - c) mod N) / l). Two-sided: exp(-dist(x, c) / l), cyclic.
enum class Envelope { OneSided, TwoSided };

/// A family of random localized vectors.
///
///  RandomSubsetEqualAmp  M distinct uniform positions, amplitudes e^{i theta}/sqrt(M)
///  RandomSubsetHaar      Haar unit vector of dimension M on M uniform positions
///  AdjacentWindow        support {c, ..., c+M-1} mod N, c uniform; amplitudes per `profile`
///  ExpEnvelopeHaar       N-dim Haar vector times an exponential envelope, see Envelope
///  CosineWindow          cos(pi j / 2) on j = c+1 ... c+M (mod N), zero elsewhere
///
/// `sector` restricts RandomSubset* positions to one popcount-parity class.
/// `strict` additionally rejects windows longer than N/2, the range where the
/// closed forms for adjacent windows hold.
struct EnsembleSpec {
    Family family = Family::RandomSubsetEqualAmp;
    std::uint64_t m = 1;
    Profile profile = Profile::EqualAmp;
    double loc_length = 1.0;
    Envelope envelope = Envelope::TwoSided;
    Sector sector = Sector::None;
    bool strict = false;

    void validate(unsigned n_qubits) const;
    std::string describe() const;
};

/// A sampled state plus the register positions the family placed it on.
struct Sample {
    Statevector state;
    std::vector<std::uint64_t> support;
};

Sample sample(const EnsembleSpec& spec, unsigned n_qubits, RngHandle handle);
Sample sample(const EnsembleSpec& spec, unsigned n_qubits, CounterRng& rng);

/// Haar-random unit vector in C^m (normalized iid complex Gaussians).
std::vector<cplx> haar_unit_vector(std::uint64_t m, CounterRng& rng);

/// Uniformly permutes the amplitudes found on `support` among those positions.
Statevector shuffle_components(const Statevector& psi, CounterRng& rng,
                               std::span<const std::uint64_t> support);

/// State with `amplitudes` placed on c, c+1, ... (mod N), normalized.
Statevector window_state(unsigned n_qubits, std::uint64_t start, std::span<const cplx> amplitudes);

/// The CosineWindow member with window start c (support c+1 ... c+m).
Statevector cosine_window_state(unsigned n_qubits, std::uint64_t m, std::uint64_t c);

/// Register indices with even (or odd) popcount, ascending.
std::vector<std::uint64_t> parity_class(unsigned n_qubits, Sector sector);

Family parse_family(const std::string& name);
std::string family_name(Family f);

}  // namespace mwloc
