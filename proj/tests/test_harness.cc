#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mwloc/errors.h"
#include "mwloc/harness.h"
#include "mwloc/theory.h"

using namespace mwloc;

TEST_SUITE("harness") {
    TEST_CASE("running stats") {
        RunningStats s;
        CHECK(std::isnan(s.stderr_mean()));
        s.add(3);
        CHECK(std::isnan(s.variance()));
        for (double x : {1.0, 5.0, 7.0}) s.add(x);
        CHECK(s.count() == 4);
        CHECK(s.mean() == doctest::Approx(4.0));
        CHECK(s.variance() == doctest::Approx(20.0 / 3));
        CHECK(s.stderr_mean() == doctest::Approx(std::sqrt(20.0 / 3 / 4)));
    }

    TEST_CASE("parallel_map keeps index order and propagates errors") {
        for (unsigned w : {1u, 3u, 8u}) {
            auto out = parallel_map(100, w, [](std::size_t i) { return i * i; });
            REQUIRE(out.size() == 100);
            for (std::size_t i = 0; i < 100; i++) CHECK(out[i] == i * i);
        }
        CHECK(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
        auto boom = [](std::size_t i) -> int {
            if (i == 17) throw NumericError("boom");
            return 0;
        };
        CHECK_THROWS_AS(parallel_map(50, 4, boom), NumericError);
    }

    TEST_CASE("Monte Carlo results do not depend on the worker count") {
        EnsembleSpec spec;
        spec.family = Family::ExpEnvelopeHaar;
        spec.loc_length = 3;
        auto a = mc_estimate(spec, 6, 300, 42, 1);
        auto b = mc_estimate(spec, 6, 300, 42, 4);
        CHECK(a.q_mean == b.q_mean);
        CHECK(a.q_stderr == b.q_stderr);
        CHECK(a.inv_ipr_mean == b.inv_ipr_mean);
        auto c = mc_estimate(spec, 6, 300, 43, 1);
        CHECK(a.q_mean != c.q_mean);
        CHECK_THROWS_AS(mc_estimate(spec, 6, 1, 42), DomainError);
    }

    TEST_CASE("Monte Carlo examples against closed forms") {
        EnsembleSpec eq;
        eq.family = Family::RandomSubsetEqualAmp;
        eq.m = 8;
        auto r1 = mc_estimate(eq, 8, 4000, 1);
        CHECK(r1.inv_ipr_mean == doctest::Approx(1.0 / 8));
        CHECK(std::abs(r1.q_mean - q_equal_amp_subset(256, 8)) < 4 * r1.q_stderr);

        EnsembleSpec haar;
        haar.family = Family::RandomSubsetHaar;
        haar.m = 32;
        auto r2 = mc_estimate(haar, 5, 4000, 2);
        CHECK(std::abs(r2.q_mean - q_lubkin(32)) < 4 * r2.q_stderr);

        EnsembleSpec adj;
        adj.family = Family::AdjacentWindow;
        adj.m = 4;
        auto r3 = mc_estimate(adj, 6, 4000, 3);
        CHECK(std::abs(r3.q_mean - q_adjacent_exact(6, 4, 0.25)) < 4 * r3.q_stderr);
        CHECK(r3.samples == 4000);
        CHECK(r3.big_n == 64);
        CHECK(r3.params == adj.describe());
    }

    TEST_CASE("standard error scales as samples^-1/2") {
        EnsembleSpec spec;
        spec.family = Family::RandomSubsetHaar;
        spec.m = 6;
        auto small = mc_estimate(spec, 6, 500, 9);
        auto big = mc_estimate(spec, 6, 8000, 9);
        double ratio = small.q_stderr / big.q_stderr;
        CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
    }

    TEST_CASE("tail fit examples") {
        std::vector<TailPoint> pts;
        for (unsigned n = 4; n <= 12; n++) pts.push_back({n, 2.5 / n});
        auto f = fit_tail_constant(pts);
        CHECK(f.c == doctest::Approx(2.5));
        CHECK(f.residual < 1e-12);
        CHECK(f.points == 4);

        // Only the 4 largest n enter: a distorted small-n point has no effect.
        pts.push_back({3, 100.0});
        CHECK(fit_tail_constant(pts).c == doctest::Approx(2.5));

        std::vector<TailPoint> cos_rows;
        for (unsigned n = 8; n <= 12; n++) cos_rows.push_back({n, q_cosine(n, 4)});
        CHECK(fit_tail_constant(cos_rows).c == doctest::Approx(1.5).epsilon(0.02));

        std::vector<TailPoint> noisy{{8, 1.1 / 8}, {9, 0.9 / 9}, {10, 1.1 / 10}, {11, 0.9 / 11}};
        auto g = fit_tail_constant(noisy);
        CHECK(g.residual == doctest::Approx(0.1).epsilon(0.05));

        CHECK_THROWS_AS(fit_tail_constant({{5, 0.1}}), DomainError);
        CHECK_THROWS_AS(fit_tail_constant({{5, 0.1}, {5, 0.2}}), DomainError);
        CHECK_THROWS_AS(fit_tail_constant({{0, 0.1}, {5, 0.2}}), DomainError);
    }

    TEST_CASE("eigen rule count") {
        EigenRule r;
        CHECK(r.count_for(1024) == 10);
        r.fraction = 1.0 / 16;
        CHECK(r.count_for(1024) == 64);
        CHECK(r.count_for(4) == 1);
    }

    TEST_CASE("spin model at J = 0 gives unentangled basis states") {
        ModelSpec m;
        m.kind = ModelKind::Spin;
        m.j = 0;
        EigenRule rule;
        rule.count = 4;
        auto rows = disorder_sweep(m, {6}, 3, rule, 5, 1, true);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].series == "raw");
        CHECK(rows[0].q_mean < 1e-20);
        CHECK(rows[0].ipr_mean == doctest::Approx(1.0));
        CHECK(rows[0].samples == 3);
        CHECK(rows[0].states == 12);
        CHECK(rows[1].series == "shuffled");
        CHECK(rows[1].ipr_mean == doctest::Approx(1.0));
    }

    TEST_CASE("spin eigenstates: sector correlators and shuffled ones") {
        ModelSpec m;
        m.kind = ModelKind::Spin;
        m.j = 0.5;
        EigenRule rule;
        rule.count = 6;
        auto d = run_realization(m, 6, rule, RngHandle{3, 0}, true);
        REQUIRE(d.raw.size() == 6);
        REQUIRE(d.shuffled.size() == 6);
        for (std::size_t k = 0; k < 6; k++) {
            CHECK(std::isfinite(d.raw[k].sector_cxx));
            CHECK(std::isfinite(d.raw[k].sector_cxy));
            CHECK(d.shuffled[k].measures.ipr == doctest::Approx(d.raw[k].measures.ipr));
        }
        m.kind = ModelKind::Anderson;
        auto a = run_realization(m, 6, rule, RngHandle{3, 0}, false);
        CHECK(std::isnan(a.raw[0].sector_cxx));
        CHECK(a.shuffled.empty());
    }

    TEST_CASE("smallworld at p = 0 reproduces the Anderson rows") {
        ModelSpec an;
        an.kind = ModelKind::Anderson;
        an.w = 1.5;
        ModelSpec sw = an;
        sw.kind = ModelKind::Smallworld;
        sw.p = 0;
        EigenRule rule;
        auto a = disorder_sweep(an, {6, 7}, 4, rule, 11, 1);
        auto b = disorder_sweep(sw, {6, 7}, 4, rule, 11, 3);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); i++) {
            CHECK(a[i].q_mean == b[i].q_mean);
            CHECK(a[i].ipr_mean == b[i].ipr_mean);
            CHECK(a[i].q_stderr == b[i].q_stderr);
        }
        CHECK_THROWS_AS(disorder_sweep(an, {}, 4, rule, 1), DomainError);
        CHECK_THROWS_AS(disorder_sweep(an, {6}, 1, rule, 1), DomainError);
    }
}
