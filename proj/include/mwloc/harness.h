#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "mwloc/ensembles.h"
#include "mwloc/linalg.h"
#include "mwloc/measures.h"
#include "mwloc/models.h"

namespace mwloc {

/// Welford mean/variance.
class RunningStats {
   public:
    void add(double x);
    std::uint64_t count() const { return count_; }
    double mean() const { return mean_; }
    double variance() const;
    /// Standard error of the mean; NaN with fewer than two values.
    double stderr_mean() const;

   private:
    std::uint64_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

/// One line of the result CSV. `samples` counts the statistically independent
/// units behind the standard errors (states for Monte Carlo, disorder
/// realizations for model sweeps); `states` counts all vectors averaged.
struct ResultRow {
    std::string experiment;
    std::string series;
    unsigned n = 0;
    std::uint64_t big_n = 0;
    std::string params;
    double q_mean = 0;
    double q_stderr = 0;
    double ipr_mean = 0;
    double inv_ipr_mean = 0;
    double inv_ipr_stderr = 0;
    double cxx_mean = 0;
    double cxy_mean = 0;
    double theory = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t samples = 0;
    std::uint64_t states = 0;
    std::uint64_t seed = 0;
};

/// Worker count used when the caller passes 0.
unsigned default_workers();

/// Runs fn(i) for i in [0, count) on up to `workers` threads and returns the
/// results in index order, so any later reduction is independent of scheduling.
template <class Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn fn) -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
    using T = std::invoke_result_t<Fn, std::size_t>;
    std::vector<std::optional<T>> slots(count);
    if (workers == 0) {
        workers = default_workers();
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(body);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

// ---- Monte Carlo over random-vector ensembles ----

/// Measures of `samples` independent draws; draw i uses stream i of `seed`.
std::vector<MeasureReport> mc_collect(const EnsembleSpec& spec, unsigned n, std::uint64_t samples,
                                      std::uint64_t seed, unsigned workers = 0, QRoute route = QRoute::Gram);

ResultRow summarize(const std::vector<MeasureReport>& reports);

ResultRow mc_estimate(const EnsembleSpec& spec, unsigned n, std::uint64_t samples, std::uint64_t seed,
                      unsigned workers = 0, QRoute route = QRoute::Gram);

// ---- disorder sweeps over physical models ----

enum class ModelKind { Spin, Anderson, Smallworld };

struct ModelSpec {
    ModelKind kind = ModelKind::Anderson;
    double delta0 = 1.0;  // spin
    double delta = 1.0;   // spin
    double j = 0.1;       // spin
    double w = 1.0;       // Anderson / smallworld
    double p = 0.0;       // smallworld

    std::string describe() const;
};

/// Which eigenstates of each realization are measured: `count` states, or
/// round(fraction * N) when fraction > 0.
struct EigenRule {
    std::size_t count = 10;
    double fraction = 0.0;
    EigenSelector selector{Selection::NearestEnergy, 0.0};

    std::size_t count_for(std::uint64_t big_n) const;
};

struct StateRecord {
    double energy = 0;
    MeasureReport measures;
    // Correlators restricted to the state's parity sector (spin model only).
    double sector_cxx = std::numeric_limits<double>::quiet_NaN();
    double sector_cxy = std::numeric_limits<double>::quiet_NaN();
};

struct RealizationData {
    std::vector<StateRecord> raw;
    // Same eigenstates with components permuted within their parity sector
    // (spin model) or over the whole register (other models).
    std::vector<StateRecord> shuffled;
};

/// Builds realization `index` of `model` at n qubits from stream (seed, index),
/// diagonalizes, and measures the eigenstates picked by `rule`. Shuffles draw
/// from the same stream after the Hamiltonian.
RealizationData run_realization(const ModelSpec& model, unsigned n, const EigenRule& rule, RngHandle handle,
                                bool with_shuffle);

std::vector<RealizationData> run_realizations(const ModelSpec& model, unsigned n, const EigenRule& rule,
                                              std::uint64_t realizations, std::uint64_t seed, unsigned workers,
                                              bool with_shuffle);

/// Averages over all states of all realizations; standard errors from the
/// spread of per-realization means.
ResultRow summarize_realizations(const std::vector<RealizationData>& data, bool shuffled);

/// One row per n (plus a "shuffled" row per n when requested).
std::vector<ResultRow> disorder_sweep(const ModelSpec& model, const std::vector<unsigned>& n_list,
                                      std::uint64_t realizations, const EigenRule& rule, std::uint64_t seed,
                                      unsigned workers = 0, bool with_shuffle = false);

// ---- tail fit ----

struct TailFit {
    double c = 0;
    /// RMS over the fitted points of n q - C, i.e. in units of C.
    double residual = 0;
    std::size_t points = 0;
};

struct TailPoint {
    unsigned n;
    double q;
};

/// Least-squares fit of q = C / n over the `window` largest n.
TailFit fit_tail_constant(std::vector<TailPoint> points, std::size_t window = 4);

}  // namespace mwloc
