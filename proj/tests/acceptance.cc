// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only 4   run one criterion (ctest registers each separately)

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwloc/drivers.h"
#include "mwloc/harness.h"
#include "mwloc/models.h"
#include "mwloc/theory.h"

using namespace mwloc;

namespace {

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
        pass = pass && ok;
    }
};

unsigned g_workers = 0;

// ---- shared Monte Carlo runs for criteria 3-6 and 8 ----

struct McRun {
    std::string label;
    unsigned n;
    std::uint64_t m;
    std::vector<MeasureReport> reports;
    ResultRow row;
};

McRun mc_run(const std::string& label, const EnsembleSpec& spec, unsigned n, std::uint64_t seed) {
    McRun r{label, n, spec.m, mc_collect(spec, n, 10000, seed, g_workers), {}};
    r.row = summarize(r.reports);
    return r;
}

std::vector<McRun> lubkin_runs() {
    EnsembleSpec s;
    s.family = Family::RandomSubsetHaar;
    s.m = 32;
    return {mc_run("haar N=32", s, 5, 301)};
}

std::vector<McRun> equal_amp_runs() {
    std::vector<McRun> out;
    for (std::uint64_t m : {2, 8, 64}) {
        EnsembleSpec s;
        s.family = Family::RandomSubsetEqualAmp;
        s.m = m;
        out.push_back(mc_run("equal-amp M=" + std::to_string(m), s, 8, 400 + m));
    }
    return out;
}

std::vector<McRun> cue_runs() {
    std::vector<McRun> out;
    for (std::uint64_t m : {3, 8, 32}) {
        EnsembleSpec s;
        s.family = Family::RandomSubsetHaar;
        s.m = m;
        out.push_back(mc_run("haar-subset M=" + std::to_string(m), s, 6, 500 + m));
    }
    return out;
}

std::vector<McRun> adjacent_runs() {
    std::vector<McRun> out;
    for (auto [n, m] : std::vector<std::pair<unsigned, std::uint64_t>>{{6, 4}, {8, 16}, {9, 12}}) {
        EnsembleSpec s;
        s.family = Family::AdjacentWindow;
        s.m = m;
        s.profile = Profile::EqualAmp;
        out.push_back(mc_run(fmt("adjacent n=%u M=%llu", n, (unsigned long long)m), s, n, 600 + n));
    }
    return out;
}

void check_against(Verdict& v, const McRun& r, double theory) {
    double z = (r.row.q_mean - theory) / r.row.q_stderr;
    v.require(std::abs(z) <= 3, fmt("%s q=%.5f theory=%.5f z=%+.2f", r.label.c_str(), r.row.q_mean, theory, z));
}

// ---- criteria ----

Verdict c1_route_equivalence() {
    Verdict v;
    double worst = 0;
    std::uint64_t count = 0;
    for (unsigned n = 2; n <= 12; n++) {
        EnsembleSpec s;
        s.family = Family::RandomSubsetHaar;
        s.m = std::uint64_t{1} << n;
        auto gaps = parallel_map(1000, g_workers, [&](std::size_t i) {
            auto psi = sample(s, n, RngHandle{100 + n, i}).state;
            return std::abs(meyer_wallach_q(psi, QRoute::Gram) - meyer_wallach_q(psi, QRoute::Purity));
        });
        for (double g : gaps) worst = std::max(worst, g);
        count += gaps.size();
    }
    v.require(worst <= 1e-10, fmt("max |Q_gram - Q_purity| = %.2e over %llu states, n=2..12", worst,
                                  (unsigned long long)count));
    return v;
}

Verdict c2_oracle_equality() {
    Verdict v;
    double worst = 0;
    std::uint64_t cases = 0;
    for (unsigned n = 3; n <= 10; n++) {
        std::uint64_t big_n = std::uint64_t{1} << n;
        std::vector<std::uint64_t> ms;
        for (std::uint64_t m = 2; m <= big_n / 2; m++) ms.push_back(m);
        auto gaps = parallel_map(ms.size(), g_workers, [&](std::size_t i) {
            return std::abs(q_adjacent_exact(n, ms[i], 0.5) - q_adjacent_oracle(n, ms[i], 0.5));
        });
        for (double g : gaps) worst = std::max(worst, g);
        cases += gaps.size();
    }
    v.require(worst <= 1e-12, fmt("max |exact - oracle| = %.2e over %llu (n, M) pairs, n=3..10", worst,
                                  (unsigned long long)cases));
    return v;
}

Verdict c3_lubkin() {
    Verdict v;
    auto runs = lubkin_runs();
    check_against(v, runs[0], q_lubkin(32));
    return v;
}

Verdict c4_equal_amp() {
    Verdict v;
    for (const auto& r : equal_amp_runs()) check_against(v, r, q_equal_amp_subset(256, r.m));
    return v;
}

Verdict c5_cue_subset() {
    Verdict v;
    for (const auto& r : cue_runs()) check_against(v, r, q_cue_subset(64, r.m));
    return v;
}

Verdict c6_adjacent() {
    Verdict v;
    for (const auto& r : adjacent_runs()) check_against(v, r, q_adjacent_exact(r.n, r.m, 1.0 / static_cast<double>(r.m)));
    return v;
}

Verdict c7_cosine() {
    Verdict v;
    double worst = 0;
    std::vector<TailPoint> tail;
    for (unsigned n = 6; n <= 10; n++) {
        std::uint64_t big_n = std::uint64_t{1} << n;
        for (std::uint64_t m : {2, 4, 8}) {
            auto qs = parallel_map(big_n, g_workers,
                                   [&](std::size_t c) { return meyer_wallach_q(cosine_window_state(n, m, c)); });
            double mean = 0;
            for (double q : qs) mean += q;
            mean /= static_cast<double>(big_n);
            worst = std::max(worst, std::abs(mean - q_cosine(n, m)));
            if (m == 4) tail.push_back({n, mean});
        }
    }
    v.require(worst <= 1e-10, fmt("max |<Q>_c - q_cosine| = %.2e, M in {2,4,8}, n=6..10", worst));
    TailFit f = fit_tail_constant(tail);
    double limit = cosine_tail_constant(4);
    double rel = std::abs(f.c - limit) / limit;
    v.require(rel <= 0.02, fmt("M=4 tail C=%.4f vs limit %.4f (%.2f%%)", f.c, limit, 100 * rel));
    return v;
}

Verdict c8_correlators() {
    Verdict v;
    double worst = 0;
    std::uint64_t states = 0;
    std::vector<std::vector<McRun>> all{lubkin_runs(), equal_amp_runs(), cue_runs(), adjacent_runs()};
    for (const auto& group : all) {
        for (const auto& r : group) {
            double big_n = std::ldexp(1.0, static_cast<int>(r.n));
            for (const auto& m : r.reports) {
                double id = m.inv_ipr + big_n * (big_n / 2 - 1) * m.cxx + big_n * big_n / 2 * m.cxy;
                worst = std::max(worst, std::abs(id - 1));
                states++;
            }
        }
    }
    v.require(worst <= 1e-10, fmt("normalization identity max error %.2e over %llu states", worst,
                                  (unsigned long long)states));
    for (const auto& r : all[1]) {
        RunningStats resid;
        double big_n = 256;
        for (const auto& m : r.reports) resid.add(m.q - big_n * (big_n - 2) * m.cxy);
        double z = resid.mean() / resid.stderr_mean();
        v.require(std::abs(z) <= 3, fmt("%s <Q - N(N-2)Cxy> = %+.2e z=%+.2f", r.label.c_str(), resid.mean(), z));
    }
    return v;
}

Verdict c9_spin() {
    Verdict v;
    // (a) parity block structure, exact zeros.
    std::uint64_t nonzero = 0;
    SpinModelParams sp{10, 1.0, 1.0, 0.5};
    for (std::uint64_t r = 0; r < 3; r++) {
        CounterRng rng(RngHandle{900, r});
        Matrix h = build_spin_hamiltonian(sp, rng);
        for (std::size_t j = 0; j < h.cols(); j++)
            for (std::size_t i = 0; i < h.rows(); i++)
                if (((std::popcount(i) ^ std::popcount(j)) & 1) && h(i, j) != 0.0) nonzero++;
    }
    v.require(nonzero == 0, fmt("(a) %llu cross-parity entries in H, n=10", (unsigned long long)nonzero));

    const unsigned n = 10;
    const double big_n = 1024;
    const std::vector<double> js{0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0};
    ModelSpec m;
    m.kind = ModelKind::Spin;
    m.delta0 = 1;
    m.delta = 1;
    EigenRule rule;
    rule.fraction = 1.0 / 16;
    rule.selector = {Selection::MedianIndex, 0};

    struct Point {
        double j, gap, gap_se, rel_gap, dc, dc_se, sdc, sdc_se, sgap, sgap_se;
    };
    std::vector<Point> pts;
    for (double j : js) {
        m.j = j;
        auto data = run_realizations(m, n, rule, 100, 901, g_workers, true);
        RunningStats gap, sgap, dc, sdc, th;
        for (const auto& d : data) {
            for (int shuffled = 0; shuffled < 2; shuffled++) {
                const auto& recs = shuffled ? d.shuffled : d.raw;
                double q = 0, inv = 0, x = 0, y = 0;
                for (const auto& r : recs) {
                    q += r.measures.q;
                    inv += r.measures.inv_ipr;
                    x += r.sector_cxx;
                    y += r.sector_cxy;
                }
                double k = static_cast<double>(recs.size());
                double t = q_spin_sector(static_cast<std::uint64_t>(big_n), inv / k);
                (shuffled ? sgap : gap).add(t - q / k);
                (shuffled ? sdc : dc).add((x - y) / k);
                if (!shuffled) th.add(t);
            }
        }
        pts.push_back({j, gap.mean(), gap.stderr_mean(), gap.mean() / th.mean(), dc.mean(), dc.stderr_mean(),
                       sdc.mean(), sdc.stderr_mean(), sgap.mean(), sgap.stderr_mean()});
    }

    // (b) shuffled components follow the sector law.
    bool b_ok = true;
    std::string b_worst;
    double b_z = 0;
    for (const auto& p : pts) {
        double z = p.sgap / p.sgap_se;
        if (std::abs(z) > std::abs(b_z)) {
            b_z = z;
            b_worst = fmt("J=%g", p.j);
        }
        b_ok = b_ok && std::abs(z) <= 3;
    }
    v.require(b_ok, fmt("(b) shuffled vs q_spin_sector: worst z=%+.2f at %s", b_z, b_worst.c_str()));

    // (c) raw states: deviation below theory at intermediate J, vanishing at large J,
    // and Cxx != Cxy (within the parity sector) wherever the deviation is significant.
    std::size_t imax = 0;
    for (std::size_t i = 0; i < pts.size(); i++)
        if (pts[i].rel_gap > pts[imax].rel_gap) imax = i;
    const Point& last = pts.back();
    bool interior = imax > 0 && imax + 1 < pts.size();
    v.require(interior && pts[imax].gap / pts[imax].gap_se > 3,
              fmt("(c) largest raw deficit %.1f%% at J=%g (z=%.1f)", 100 * pts[imax].rel_gap, pts[imax].j,
                  pts[imax].gap / pts[imax].gap_se));
    v.require(last.rel_gap < 0.02 && last.rel_gap < pts[imax].rel_gap / 5,
              fmt("(c) deficit at J=%g is %.2f%%", last.j, 100 * last.rel_gap));
    bool corr_ok = true;
    int deviating = 0;
    for (const auto& p : pts) {
        if (p.gap / p.gap_se > 3) {
            deviating++;
            corr_ok = corr_ok && p.dc / p.dc_se > 3;
        }
        corr_ok = corr_ok && std::abs(p.sdc / p.sdc_se) <= 3;
    }
    v.require(corr_ok, fmt("(c) sector Cxx > Cxy at all %d deviating J; shuffled Cxx = Cxy within 3 se", deviating));
    return v;
}

Verdict c10_anderson() {
    Verdict v;
    std::vector<double> cs;
    for (double w : {0.5, 1.0, 2.0}) {
        ModelSpec m;
        m.kind = ModelKind::Anderson;
        m.w = w;
        EigenRule rule;
        auto rows = disorder_sweep(m, parse_n_list("6..12"), 200, rule, 1000, g_workers);
        std::vector<TailPoint> pts;
        for (const auto& r : rows) pts.push_back({r.n, r.q_mean});
        TailFit f = fit_tail_constant(pts);
        double lo = 1e300, hi = 0, sum = 0;
        for (std::size_t i = pts.size() - 4; i < pts.size(); i++) {
            double nq = pts[i].n * pts[i].q;
            lo = std::min(lo, nq);
            hi = std::max(hi, nq);
            sum += nq;
        }
        double spread = (hi - lo) / (sum / 4);
        v.require(spread < 0.10, fmt("w=%g spread of n<Q> over n=9..12 %.1f%% (C=%.3f)", w, 100 * spread, f.c));
        cs.push_back(f.c);
    }
    v.require(cs[0] > cs[1] && cs[1] > cs[2], fmt("C decreasing in w: %.3f > %.3f > %.3f", cs[0], cs[1], cs[2]));
    return v;
}

Verdict c11_envelope() {
    Verdict v;
    for (double l : {2.0, 4.0, 8.0}) {
        auto e = envelope_check(l, 10, 1000, 1100 + static_cast<std::uint64_t>(l), g_workers);
        double rel = (e.row.q_mean - e.row.theory) / e.row.theory;
        v.require(std::abs(rel) <= 0.05, fmt("l=%g xi=%.2f M=%llu q=%.4f theory=%.4f (%+.1f%%)", l, e.row.ipr_mean,
                                             (unsigned long long)e.m, e.row.q_mean, e.row.theory, 100 * rel));
    }
    // Reported only: the one-sided envelope.
    std::string one = "one-sided envelope (not gating):";
    for (double l : {2.0, 4.0, 8.0}) {
        auto e = envelope_check(l, 10, 1000, 1100 + static_cast<std::uint64_t>(l), g_workers, Envelope::OneSided);
        one += fmt(" l=%g %+.1f%%", l, 100 * (e.row.q_mean - e.row.theory) / e.row.theory);
    }
    v.detail += "; " + one;
    return v;
}

Verdict c12_smallworld() {
    Verdict v;
    auto sweep = [](double p) {
        ModelSpec m;
        m.kind = ModelKind::Smallworld;
        m.w = 1;
        m.p = p;
        EigenRule rule;
        return disorder_sweep(m, parse_n_list("6..11"), 40, rule, 1200, g_workers);
    };
    auto sig_up = [](const ResultRow& a, const ResultRow& b) {
        return (b.q_mean - a.q_mean) / std::hypot(a.q_stderr, b.q_stderr);
    };

    auto lo = sweep(0.001);
    double worst_up = -1e300;
    for (std::size_t i = 1; i < lo.size(); i++) worst_up = std::max(worst_up, sig_up(lo[i - 1], lo[i]));
    double total_drop = -sig_up(lo.front(), lo.back());
    v.require(worst_up <= 3 && total_drop > 3,
              fmt("p=0.001 q: %.4f (n=6) -> %.4f (n=11), drop z=%.1f, largest step up z=%+.1f", lo.front().q_mean,
                  lo.back().q_mean, total_drop, worst_up));
    std::vector<TailPoint> pts;
    for (const auto& r : lo) pts.push_back({r.n, r.q_mean});
    TailFit f = fit_tail_constant(pts);
    v.require(f.residual < 0.10 * f.c, fmt("p=0.001 C/n fit C=%.3f residual %.1f%% of C", f.c, 100 * f.residual / f.c));

    auto hi = sweep(0.06);
    double worst_down = 0;
    for (std::size_t i = hi.size() - 2; i < hi.size(); i++) worst_down = std::min(worst_down, sig_up(hi[i - 1], hi[i]));
    v.require(worst_down >= -3, fmt("p=0.06 top 3 n non-decreasing (largest step down z=%.1f)", worst_down));
    const auto& top = hi.back();
    double target = 1 - top.inv_ipr_mean;
    double rel = (top.q_mean - target) / target;
    v.require(std::abs(rel) <= 0.10,
              fmt("p=0.06 n=%u q=%.4f vs 1-<1/xi>=%.4f (%+.1f%%)", top.n, top.q_mean, target, 100 * rel));
    return v;
}

Verdict c13_band_limit() {
    Verdict v;
    ModelSpec m;
    m.kind = ModelKind::Spin;
    m.delta0 = 1;
    m.delta = 0.01;
    m.j = 0.05;
    for (auto [n, reals] : std::vector<std::pair<unsigned, std::uint64_t>>{{10, 5}, {12, 2}}) {
        auto bands = band_sweep(m, n, reals, 1300 + n, g_workers);
        int used = 0;
        double worst = 0;
        unsigned worst_b = 0;
        for (const auto& b : bands) {
            if (b.row.inv_ipr_mean > 0.1) continue;
            used++;
            double rel = std::abs(b.row.q_mean - b.row.theory) / b.row.theory;
            if (rel > worst) {
                worst = rel;
                worst_b = b.n_b;
            }
        }
        v.require(used > 0 && worst <= 0.10, fmt("n=%u: %d bands with <1/xi> <= 0.1, worst |q/4eta(1-eta) - 1| = %.1f%% (n_b=%u)",
                                                 n, used, 100 * worst, worst_b));
    }
    return v;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Verdict()> fn;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion (1-13)");
    app.add_option("--workers", g_workers, "Worker threads (0 = available parallelism)");
    CLI11_PARSE(app, argc, argv);

    std::vector<Criterion> all = {
        {1, "route equivalence", 10, c1_route_equivalence},
        {2, "adjacent closed form equals oracle", 60, c2_oracle_equality},
        {3, "full Haar vectors", 30, c3_lubkin},
        {4, "equal-amplitude random subsets", 60, c4_equal_amp},
        {5, "Haar random subsets", 60, c5_cue_subset},
        {6, "adjacent windows", 120, c6_adjacent},
        {7, "cosine windows", 60, c7_cosine},
        {8, "correlator identities", 300, c8_correlators},
        {9, "spin model properties", 900, c9_spin},
        {10, "Anderson tail", 900, c10_anderson},
        {11, "exponential envelope", 300, c11_envelope},
        {12, "smallworld transition", 900, c12_smallworld},
        {13, "band limit", 900, c13_band_limit},
    };
    if (only < 0 || only > static_cast<int>(all.size())) {
        std::fprintf(stderr, "--only must be 1..%zu\n", all.size());
        return 1;
    }
    bool ok = true;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.fn();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        v.require(secs <= c.limit_s, fmt("runtime %.1f s (limit %.0f s)", secs, c.limit_s));
        std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
        std::fflush(stdout);
        ok = ok && v.pass;
    }
    return ok ? 0 : 1;
}
