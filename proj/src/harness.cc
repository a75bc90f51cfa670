#include "mwloc/harness.h"

#include <algorithm>
#include <sstream>

#include "mwloc/errors.h"

namespace mwloc {

void RunningStats::add(double x) {
    count_++;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

double RunningStats::variance() const {
    if (count_ < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::stderr_mean() const {
    if (count_ < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::sqrt(variance() / static_cast<double>(count_));
}

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<MeasureReport> mc_collect(const EnsembleSpec& spec, unsigned n, std::uint64_t samples,
                                      std::uint64_t seed, unsigned workers, QRoute route) {
    if (samples < 2) {
        throw DomainError("Monte Carlo needs at least 2 samples");
    }
    spec.validate(n);
    return parallel_map(samples, workers, [&](std::size_t i) {
        Sample s = sample(spec, n, RngHandle{seed, i});
        return measure(s.state, route);
    });
}

ResultRow summarize(const std::vector<MeasureReport>& reports) {
    RunningStats q, ipr_s, inv, cxx, cxy;
    for (const auto& r : reports) {
        q.add(r.q);
        ipr_s.add(r.ipr);
        inv.add(r.inv_ipr);
        cxx.add(r.cxx);
        cxy.add(r.cxy);
    }
    ResultRow row;
    row.q_mean = q.mean();
    row.q_stderr = q.stderr_mean();
    row.ipr_mean = ipr_s.mean();
    row.inv_ipr_mean = inv.mean();
    row.inv_ipr_stderr = inv.stderr_mean();
    row.cxx_mean = cxx.mean();
    row.cxy_mean = cxy.mean();
    row.samples = reports.size();
    row.states = reports.size();
    return row;
}

ResultRow mc_estimate(const EnsembleSpec& spec, unsigned n, std::uint64_t samples, std::uint64_t seed,
                      unsigned workers, QRoute route) {
    ResultRow row = summarize(mc_collect(spec, n, samples, seed, workers, route));
    row.experiment = "mc";
    row.series = family_name(spec.family);
    row.n = n;
    row.big_n = std::uint64_t{1} << n;
    row.params = spec.describe();
    row.seed = seed;
    return row;
}

std::string ModelSpec::describe() const {
    std::ostringstream s;
    switch (kind) {
        case ModelKind::Spin:
            s << "model=spin;delta0=" << delta0 << ";delta=" << delta << ";J=" << j;
            break;
        case ModelKind::Anderson:
            s << "model=anderson;w=" << w;
            break;
        case ModelKind::Smallworld:
            s << "model=smallworld;w=" << w << ";p=" << p;
            break;
    }
    return s.str();
}

std::size_t EigenRule::count_for(std::uint64_t big_n) const {
    if (fraction > 0) {
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(big_n))));
    }
    return count;
}

namespace {

StateRecord record(const Eigenstate& es, const std::vector<std::uint64_t>* sector) {
    StateRecord rec;
    rec.energy = es.energy;
    rec.measures = measure(es.state);
    if (sector) {
        Correlators c = correlators_on_support(es.state, *sector);
        rec.sector_cxx = c.cxx;
        rec.sector_cxy = c.cxy;
    }
    return rec;
}

}  // namespace

RealizationData run_realization(const ModelSpec& model, unsigned n, const EigenRule& rule, RngHandle handle,
                                bool with_shuffle) {
    CounterRng rng(handle);
    std::uint64_t big_n = std::uint64_t{1} << n;
    std::size_t count = rule.count_for(big_n);
    std::vector<Eigenstate> states;
    switch (model.kind) {
        case ModelKind::Spin: {
            SpinModelParams params{n, model.delta0, model.delta, model.j};
            states = spin_central_eigenstates(draw_spin_disorder(params, rng), count, rule.selector);
            break;
        }
        case ModelKind::Anderson:
            states = central_eigenstates(build_anderson(AndersonParams{n, model.w}, rng), count, rule.selector);
            break;
        case ModelKind::Smallworld:
            states = central_eigenstates(build_smallworld(SmallworldParams{{n, model.w}, model.p}, rng), count,
                                         rule.selector);
            break;
    }
    RealizationData data;
    std::vector<std::uint64_t> full;
    if (with_shuffle && model.kind != ModelKind::Spin) {
        full = parity_class(n, Sector::None);
    }
    for (const auto& es : states) {
        std::vector<std::uint64_t> sector;
        if (model.kind == ModelKind::Spin) {
            sector = sector_of(es.state);
        }
        const std::vector<std::uint64_t>* sp = model.kind == ModelKind::Spin ? &sector : nullptr;
        data.raw.push_back(record(es, sp));
        if (with_shuffle) {
            Statevector shuffled = shuffle_components(es.state, rng, sp ? sector : full);
            data.shuffled.push_back(record(Eigenstate{es.energy, shuffled}, sp));
        }
    }
    return data;
}

std::vector<RealizationData> run_realizations(const ModelSpec& model, unsigned n, const EigenRule& rule,
                                              std::uint64_t realizations, std::uint64_t seed, unsigned workers,
                                              bool with_shuffle) {
    if (realizations < 2) {
        throw DomainError("disorder averages need at least 2 realizations");
    }
    return parallel_map(realizations, workers, [&](std::size_t i) {
        return run_realization(model, n, rule, RngHandle{seed, i}, with_shuffle);
    });
}

ResultRow summarize_realizations(const std::vector<RealizationData>& data, bool shuffled) {
    RunningStats q, ipr_s, inv, cxx, cxy;
    std::uint64_t states = 0;
    for (const auto& d : data) {
        const auto& recs = shuffled ? d.shuffled : d.raw;
        if (recs.empty()) {
            throw DomainError("realization has no measured states");
        }
        double sq = 0, si = 0, sinv = 0, sx = 0, sy = 0;
        for (const auto& r : recs) {
            sq += r.measures.q;
            si += r.measures.ipr;
            sinv += r.measures.inv_ipr;
            sx += r.measures.cxx;
            sy += r.measures.cxy;
        }
        double k = static_cast<double>(recs.size());
        q.add(sq / k);
        ipr_s.add(si / k);
        inv.add(sinv / k);
        cxx.add(sx / k);
        cxy.add(sy / k);
        states += recs.size();
    }
    ResultRow row;
    row.q_mean = q.mean();
    row.q_stderr = q.stderr_mean();
    row.ipr_mean = ipr_s.mean();
    row.inv_ipr_mean = inv.mean();
    row.inv_ipr_stderr = inv.stderr_mean();
    row.cxx_mean = cxx.mean();
    row.cxy_mean = cxy.mean();
    row.samples = data.size();
    row.states = states;
    return row;
}

std::vector<ResultRow> disorder_sweep(const ModelSpec& model, const std::vector<unsigned>& n_list,
                                      std::uint64_t realizations, const EigenRule& rule, std::uint64_t seed,
                                      unsigned workers, bool with_shuffle) {
    if (n_list.empty()) {
        throw DomainError("n list must not be empty");
    }
    std::vector<ResultRow> rows;
    for (unsigned n : n_list) {
        auto data = run_realizations(model, n, rule, realizations, seed, workers, with_shuffle);
        for (bool shuffled : {false, true}) {
            if (shuffled && !with_shuffle) {
                continue;
            }
            ResultRow row = summarize_realizations(data, shuffled);
            row.experiment = "model";
            row.series = shuffled ? "shuffled" : "raw";
            row.n = n;
            row.big_n = std::uint64_t{1} << n;
            row.params = model.describe();
            row.seed = seed;
            rows.push_back(row);
        }
    }
    return rows;
}

TailFit fit_tail_constant(std::vector<TailPoint> points, std::size_t window) {
    if (points.size() < 2) {
        throw DomainError("tail fit needs at least 2 points");
    }
    std::sort(points.begin(), points.end(), [](const TailPoint& a, const TailPoint& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < points.size(); i++) {
        if (points[i].n == points[i - 1].n) {
            throw DomainError("tail fit needs distinct n values");
        }
    }
    if (points.front().n == 0) {
        throw DomainError("tail fit needs n >= 1");
    }
    std::size_t k = std::min(std::max<std::size_t>(window, 2), points.size());
    std::vector<TailPoint> tail(points.end() - static_cast<std::ptrdiff_t>(k), points.end());
    double num = 0, den = 0;
    for (const auto& p : tail) {
        num += p.q / p.n;
        den += 1.0 / (static_cast<double>(p.n) * p.n);
    }
    TailFit fit;
    fit.c = num / den;
    double ss = 0;
    for (const auto& p : tail) {
        double d = p.n * p.q - fit.c;
        ss += d * d;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(k));
    fit.points = k;
    return fit;
}

}  // namespace mwloc
