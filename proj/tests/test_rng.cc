#include <cmath>
#include <set>

#include "doctest.h"
#include "mwloc/errors.h"
#include "mwloc/rng.h"

using namespace mwloc;

namespace {

// Reference SplitMix64 (Vigna): state += gamma; return finalizer(state).
struct RefSplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

TEST_SUITE("rng") {
    TEST_CASE("finalizer matches published SplitMix64 output for seed 0") {
        RefSplitMix ref{0};
        CHECK(ref.next() == 0xE220A8397B1DCDAFULL);
        CHECK(CounterRng::mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
    }

    TEST_CASE("stream is SplitMix64 started at the documented key") {
        for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
            for (std::uint64_t stream : {0ULL, 1ULL, 77ULL}) {
                RefSplitMix k1{seed - 0x9E3779B97F4A7C15ULL};
                std::uint64_t mixed_seed = k1.next();
                RefSplitMix k2{mixed_seed + stream * 0xD1B54A32D192ED03ULL + 1 - 0x9E3779B97F4A7C15ULL};
                RefSplitMix ref{k2.next()};
                CounterRng rng(RngHandle{seed, stream});
                for (int i = 0; i < 16; i++) {
                    CHECK(rng.next_u64() == ref.next());
                }
            }
        }
    }

    TEST_CASE("identical handles reproduce, distinct streams differ") {
        CounterRng a(RngHandle{7, 3}), b(RngHandle{7, 3}), c(RngHandle{7, 4}), d(RngHandle{8, 3});
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 100; i++) {
            auto x = a.next_u64();
            CHECK(x == b.next_u64());
            seen.insert(x);
            seen.insert(c.next_u64());
            seen.insert(d.next_u64());
        }
        CHECK(seen.size() == 300);
    }

    TEST_CASE("uniform moments") {
        CounterRng rng(RngHandle{1, 0});
        const int n = 200000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; i++) {
            double u = rng.uniform();
            CHECK_FALSE((u < 0 || u >= 1));
            s += u;
            s2 += u * u;
        }
        CHECK(std::abs(s / n - 0.5) < 3 * std::sqrt(1.0 / 12 / n));
        CHECK(std::abs(s2 / n - 1.0 / 3) < 0.005);
        double x = rng.uniform(-2, 3);
        CHECK((x >= -2 && x < 3));
    }

    TEST_CASE("bounded integers are unbiased") {
        CounterRng rng(RngHandle{2, 0});
        const int bins = 6, n = 120000;
        std::vector<int> count(bins);
        for (int i = 0; i < n; i++) {
            auto k = rng.below(bins);
            REQUIRE(k < bins);
            count[k]++;
        }
        double chi2 = 0, expect = double(n) / bins;
        for (int c : count) chi2 += (c - expect) * (c - expect) / expect;
        CHECK(chi2 < 20.5);  // 5 dof, p ~ 0.001
        CHECK_THROWS_AS(rng.below(0), DomainError);
        CHECK(rng.below(1) == 0);
    }

    TEST_CASE("normal and complex normal moments") {
        CounterRng rng(RngHandle{3, 0});
        const int n = 200000;
        double s = 0, s2 = 0, s4 = 0, c2 = 0;
        cplx cs = 0;
        for (int i = 0; i < n; i++) {
            double x = rng.normal();
            s += x;
            s2 += x * x;
            s4 += x * x * x * x;
            cplx z = rng.complex_normal();
            c2 += std::norm(z);
            cs += z;
        }
        CHECK(std::abs(s / n) < 3 / std::sqrt(double(n)));
        CHECK(std::abs(s2 / n - 1) < 3 * std::sqrt(2.0 / n));
        CHECK(std::abs(s4 / n - 3) < 0.1);
        CHECK(std::abs(c2 / n - 1) < 3 * std::sqrt(1.0 / n));
        CHECK(std::abs(cs / double(n)) < 3 / std::sqrt(double(n)));
    }
}
