#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mwloc/drivers.h"
#include "mwloc/errors.h"
#include "mwloc/theory.h"

using namespace mwloc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("mwloc_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string setting(const RunConfig& c, const std::string& key) {
    for (const auto& [k, v] : c.settings())
        if (k == key) return v;
    return "<missing>";
}

}  // namespace

TEST_SUITE("drivers") {
    TEST_CASE("list parsing") {
        CHECK(parse_n_list("6..9") == std::vector<unsigned>{6, 7, 8, 9});
        CHECK(parse_n_list("8, 10") == std::vector<unsigned>{8, 10});
        CHECK_THROWS_AS(parse_n_list("9..6"), DomainError);
        CHECK_THROWS_AS(parse_n_list("a"), DomainError);
        CHECK_THROWS_AS(parse_n_list("63"), DomainError);
        CHECK(parse_double_list("0.5,1e-2") == std::vector<double>{0.5, 0.01});
        CHECK_THROWS_AS(parse_double_list("1,x"), DomainError);
    }

    TEST_CASE("defaults and validation") {
        for (const char* e : {"fig1", "fig2", "fig3", "fig4"}) {
            auto c = default_run_config(e);
            CHECK_NOTHROW(c.validate());
            CHECK(setting(c, "experiment") == e);
            CHECK(setting(c, "workers") == "<missing>");
        }
        CHECK_THROWS_AS(default_run_config("fig5"), DomainError);
        auto c = default_run_config("fig4");
        apply_setting(c, "n", "6,13");
        CHECK_THROWS_AS(c.validate(), ResourceError);
        apply_setting(c, "n", "8");
        CHECK_THROWS_AS(c.validate(), DomainError);
        auto s = default_run_config("fig2");
        apply_setting(s, "n", "14");
        CHECK_THROWS_AS(s.validate(), ResourceError);
        auto a = default_run_config("fig3");
        apply_setting(a, "realizations", "1");
        CHECK_THROWS_AS(a.validate(), DomainError);
    }

    TEST_CASE("settings: keys and precedence") {
        auto dir = scratch("cfg");
        auto c = default_run_config("fig3");
        CHECK_FALSE(c.seed_given);
        {
            std::ofstream f(dir / "run.cfg");
            f << "# comment\n\nrealizations = 7\nseed=99\nw=1.5\nenvelope-l=\n";
        }
        apply_config_file(c, dir / "run.cfg");
        CHECK(c.realizations == 7);
        CHECK(c.seed == 99);
        CHECK(c.seed_given);
        CHECK(c.sweep == std::vector<double>{1.5});
        CHECK(c.envelope_l.empty());
        apply_setting(c, "realizations", "9");
        CHECK(c.realizations == 9);
        apply_setting(c, "states", "4");
        CHECK(c.rule.count == 4);
        apply_setting(c, "selector", "median");
        CHECK(c.rule.selector.kind == Selection::MedianIndex);
        CHECK_THROWS_AS(apply_setting(c, "selector", "middle"), DomainError);
        CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), DomainError);
        CHECK_THROWS_AS(apply_setting(c, "realizations", "-3"), DomainError);
        {
            std::ofstream f(dir / "bad.cfg");
            f << "realizations\n";
        }
        CHECK_THROWS_AS(apply_config_file(c, dir / "bad.cfg"), DomainError);
        CHECK_THROWS_AS(apply_config_file(c, dir / "absent.cfg"), DomainError);
        auto f4 = default_run_config("fig4");
        apply_setting(f4, "w", "2");
        CHECK(f4.model.w == 2);
        apply_setting(f4, "p", "0.02");
        CHECK(f4.sweep == std::vector<double>{0.02});
        fs::remove_all(dir);
    }

    TEST_CASE("format_double") {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(1.0 / 3) == "0.333333333333");
        CHECK(format_double(NAN) == "nan");
        CHECK(format_double(-INFINITY) == "-inf");
    }

    TEST_CASE("csv round trip and schema validation") {
        auto dir = scratch("csv");
        ResultRow r;
        r.experiment = "mc";
        r.series = "s";
        r.n = 4;
        r.big_n = 16;
        r.params = "m=2";
        r.q_mean = 0.5;
        r.q_stderr = 0.01;
        r.ipr_mean = 2;
        r.inv_ipr_mean = 0.5;
        r.inv_ipr_stderr = 0;
        r.samples = 10;
        r.states = 10;
        r.seed = 3;
        Table t = result_table({r}, {"extra"}, {{1.25}});
        CHECK(validate_table(t, result_schema({"extra"})).empty());
        write_csv(dir / "t.csv", t);
        Table back = read_csv(dir / "t.csv");
        CHECK(back.columns == t.columns);
        CHECK(back.rows == t.rows);

        CHECK_FALSE(validate_table(t, result_schema()).empty());
        Table bad = t;
        bad.rows[0][5] = "1.5";  // q_mean above 1
        CHECK_FALSE(validate_table(bad, result_schema({"extra"})).empty());
        bad = t;
        bad.rows[0][2] = "four";
        CHECK_FALSE(validate_table(bad, result_schema({"extra"})).empty());
        bad = t;
        bad.rows[0][5] = "nan";
        CHECK_FALSE(validate_table(bad, result_schema({"extra"})).empty());
        bad = t;
        std::swap(bad.columns[0], bad.columns[1]);
        CHECK_FALSE(validate_table(bad, result_schema({"extra"})).empty());

        Table comma = t;
        comma.rows[0][4] = "a,b";
        CHECK_THROWS_AS(write_csv(dir / "c.csv", comma), DomainError);
        fs::remove_all(dir);
    }

    TEST_CASE("envelope check compares against the adjacent-window law") {
        auto e = envelope_check(2.0, 8, 200, 5, 1, Envelope::OneSided);
        CHECK(e.m >= 2);
        CHECK(e.m <= 128);
        CHECK(e.row.theory == doctest::Approx(q_adjacent_exact(8, e.m, e.row.inv_ipr_mean)));
        CHECK(e.row.samples == 200);
        auto two = envelope_check(2.0, 8, 200, 5, 1);
        CHECK(two.row.ipr_mean > e.row.ipr_mean);
    }

    TEST_CASE("band sweep rows") {
        ModelSpec m;
        m.kind = ModelKind::Spin;
        m.delta = 0.01;
        m.j = 0.05;
        auto rows = band_sweep(m, 6, 2, 3, 1);
        REQUIRE_FALSE(rows.empty());
        std::uint64_t states = 0;
        for (const auto& b : rows) {
            CHECK(b.eta == doctest::Approx(double(b.n_b) / 6));
            CHECK(b.row.theory == doctest::Approx(q_band_limit(b.eta)));
            states += b.row.states;
        }
        CHECK(states == 2 * 64);
    }

    TEST_CASE("drivers write validated files independent of worker count") {
        struct Case {
            const char* exp;
            std::vector<std::pair<std::string, std::string>> set;
        };
        std::vector<Case> cases = {
            {"fig1", {{"n", "6"}, {"realizations", "2"}}},
            {"fig2", {{"n", "6"}, {"sweep", "0.1,0.5"}, {"realizations", "3"}}},
            {"fig3", {{"n", "5..8"}, {"sweep", "1,2"}, {"realizations", "3"}, {"states", "4"},
                      {"envelope-l", "2"}, {"envelope-n", "6"}, {"envelope-samples", "50"}}},
            {"fig4", {{"n", "5..8"}, {"sweep", "0.01,0.06"}, {"realizations", "3"}, {"states", "4"}}},
        };
        for (const auto& k : cases) {
            std::string exp = k.exp;
            CAPTURE(exp);
            auto dir = scratch(exp);
            std::vector<DriverOutput> outs;
            std::vector<std::vector<std::string>> contents;
            for (unsigned w : {1u, 3u}) {
                auto c = default_run_config(exp);
                for (const auto& [key, v] : k.set) apply_setting(c, key, v);
                c.workers = w;
                c.out_dir = dir;
                outs.push_back(run_driver(c));
                contents.emplace_back();
                for (const auto& f : outs.back().files) contents.back().push_back(slurp(f));
            }
            REQUIRE(outs[0].files.size() == outs[1].files.size());
            REQUIRE_FALSE(outs[0].rows.empty());
            CHECK(contents[0] == contents[1]);
            bool has_meta = false, has_gp = false;
            for (std::size_t i = 0; i < outs[0].files.size(); i++) {
                auto a = outs[0].files[i];
                CHECK(a.filename() == outs[1].files[i].filename());
                CHECK(fs::exists(a));
                if (a.extension() == ".meta") {
                    has_meta = true;
                    const std::string& meta = contents[0][i];
                    CHECK(meta.find("version=" + std::string(kVersion)) == 0);
                    CHECK(meta.find("experiment=" + exp) != std::string::npos);
                    CHECK(meta.find("files=") != std::string::npos);
                }
                if (a.extension() == ".gp") has_gp = true;
                if (a.filename() == exp + ".csv") {
                    Table t = read_csv(a);
                    CHECK(t.rows.size() >= 2);
                    CHECK(t.columns[0] == "experiment");
                }
            }
            CHECK(has_meta);
            CHECK(has_gp);
            fs::remove_all(dir);
        }
    }

    TEST_CASE("fig3 and fig4 emit tail fits") {
        auto c = default_run_config("fig4");
        apply_setting(c, "n", "6..8");
        apply_setting(c, "sweep", "0.03");
        apply_setting(c, "realizations", "3");
        c.out_dir = scratch("fits");
        auto out = run_driver(c);
        REQUIRE(out.fits.size() == 1);
        CHECK(out.fits[0].points == 3);
        CHECK(out.fits[0].n_min == 6);
        CHECK(out.fits[0].n_max == 8);
        CHECK(out.fits[0].c > 0);
        CHECK(fs::exists(c.out_dir / "fig4_fits.csv"));
        fs::remove_all(c.out_dir);
    }
}
