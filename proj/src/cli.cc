#include "mwloc/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mwloc/drivers.h"
#include "mwloc/errors.h"
#include "mwloc/theory.h"

namespace mwloc {

namespace {

std::string fmt(double x, int digits = 12) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void echo(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) {
        out << "# " << k << "=" << v << "\n";
    }
}

nlohmann::ordered_json row_json(const ResultRow& r) {
    nlohmann::ordered_json j;
    auto num = [](double x) { return std::isnan(x) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(x); };
    j["experiment"] = r.experiment;
    j["series"] = r.series;
    j["n"] = r.n;
    j["big_n"] = r.big_n;
    j["params"] = r.params;
    j["q_mean"] = num(r.q_mean);
    j["q_stderr"] = num(r.q_stderr);
    j["ipr_mean"] = num(r.ipr_mean);
    j["inv_ipr_mean"] = num(r.inv_ipr_mean);
    j["inv_ipr_stderr"] = num(r.inv_ipr_stderr);
    j["cxx_mean"] = num(r.cxx_mean);
    j["cxy_mean"] = num(r.cxy_mean);
    j["theory"] = num(r.theory);
    j["samples"] = r.samples;
    j["states"] = r.states;
    j["seed"] = r.seed;
    return j;
}

void print_table(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); i++) {
        out << (i ? "," : "") << t.columns[i];
    }
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
}

std::filesystem::path ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ResourceError("cannot create " + dir + ": " + ec.message());
    }
    return dir;
}

void write_sidecar(const std::filesystem::path& path, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ResourceError("cannot write " + path.string());
    }
    f << "version=" << kVersion << "\n";
    for (const auto& [k, v] : kv) {
        f << k << "=" << v << "\n";
    }
}

Sector parse_sector(const std::string& s) {
    if (s == "none") return Sector::None;
    if (s == "even") return Sector::Even;
    if (s == "odd") return Sector::Odd;
    throw DomainError("sector must be none, even or odd");
}

QRoute parse_route(const std::string& s) {
    if (s == "gram") return QRoute::Gram;
    if (s == "purity") return QRoute::Purity;
    if (s == "checked") return QRoute::Checked;
    throw DomainError("route must be gram, purity or checked");
}

ModelKind parse_model(const std::string& s) {
    if (s == "spin") return ModelKind::Spin;
    if (s == "anderson") return ModelKind::Anderson;
    if (s == "smallworld") return ModelKind::Smallworld;
    throw DomainError("model must be spin, anderson or smallworld");
}

/// Closed-form value matching an ensemble, NaN when none applies.
double mc_theory(const EnsembleSpec& spec, unsigned n, const ResultRow& row) {
    std::uint64_t big_n = std::uint64_t{1} << n;
    if (spec.sector != Sector::None) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    switch (spec.family) {
        case Family::RandomSubsetEqualAmp:
            return q_equal_amp_subset(big_n, spec.m);
        case Family::RandomSubsetHaar:
            return spec.m == big_n ? q_lubkin(big_n) : q_cue_subset(big_n, spec.m);
        case Family::AdjacentWindow:
            if (spec.m < 2 || spec.m > big_n / 2) {
                break;
            }
            return q_adjacent_exact(n, spec.m,
                                    spec.profile == Profile::EqualAmp ? 1.0 / static_cast<double>(spec.m)
                                                                      : row.inv_ipr_mean);
        case Family::CosineWindow:
            if (spec.m >= 2 && std::has_single_bit(spec.m) && spec.m < big_n) {
                return q_cosine(n, spec.m);
            }
            break;
        case Family::ExpEnvelopeHaar: {
            auto m = static_cast<std::uint64_t>(std::max<long long>(2, std::llround(2 * row.ipr_mean)));
            if (m <= big_n / 2) {
                return q_adjacent_exact(n, m, row.inv_ipr_mean);
            }
            break;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

struct SeedOption {
    std::optional<std::uint64_t> value;
    void add(CLI::App* app) {
        app->add_option("--seed", value, "Master seed (unsigned 64-bit); drawn from system entropy when absent");
    }
    std::uint64_t resolve() const { return value ? *value : entropy_seed(); }
};

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
    std::vector<SelftestResult> results;
    auto check = [&](const std::string& name, auto fn) {
        SelftestResult r{name, false, ""};
        try {
            r.detail = fn();
            r.pass = r.detail.empty();
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(r);
    };

    check("route-equivalence", [&]() -> std::string {
        double worst = 0;
        for (unsigned n = 2; n <= 10; n++) {
            EnsembleSpec spec;
            spec.family = Family::RandomSubsetHaar;
            spec.m = std::uint64_t{1} << n;
            for (std::uint64_t i = 0; i < 50; i++) {
                Sample s = sample(spec, n, RngHandle{seed, n * 1000 + i});
                worst = std::max(worst, std::abs(meyer_wallach_q(s.state, QRoute::Gram) -
                                                 meyer_wallach_q(s.state, QRoute::Purity)));
            }
        }
        return worst <= kRouteTolerance ? "" : "max route gap " + fmt(worst);
    });

    check("adjacent-oracle", [&]() -> std::string {
        double worst = 0;
        for (unsigned n = 3; n <= 7; n++) {
            std::uint64_t big_n = std::uint64_t{1} << n;
            for (std::uint64_t m = 2; m <= big_n / 2; m++) {
                worst = std::max(worst, std::abs(q_adjacent_exact(n, m, 0.3) - q_adjacent_oracle(n, m, 0.3)));
            }
        }
        return worst <= 1e-12 ? "" : "max gap " + fmt(worst);
    });

    check("cosine-exhaustive", [&]() -> std::string {
        double worst = 0;
        for (unsigned n = 6; n <= 8; n++) {
            std::uint64_t big_n = std::uint64_t{1} << n;
            for (std::uint64_t m : {2, 4, 8}) {
                double sum = 0;
                for (std::uint64_t c = 0; c < big_n; c++) {
                    sum += meyer_wallach_q(cosine_window_state(n, m, c));
                }
                worst = std::max(worst, std::abs(sum / static_cast<double>(big_n) - q_cosine(n, m)));
            }
        }
        return worst <= 1e-10 ? "" : "max gap " + fmt(worst);
    });

    check("normalization-identity", [&]() -> std::string {
        double worst = 0;
        const unsigned n = 6;
        for (Family f : {Family::RandomSubsetEqualAmp, Family::RandomSubsetHaar, Family::AdjacentWindow,
                         Family::ExpEnvelopeHaar, Family::CosineWindow}) {
            EnsembleSpec spec;
            spec.family = f;
            spec.m = 8;
            spec.loc_length = 3;
            for (std::uint64_t i = 0; i < 100; i++) {
                Sample s = sample(spec, n, RngHandle{seed, i});
                worst = std::max(worst, std::abs(normalization_identity(s.state, correlators(s.state)) - 1));
            }
        }
        return worst <= 1e-10 ? "" : "max deviation " + fmt(worst);
    });

    check("reference-states", [&]() -> std::string {
        double s3 = 1 / std::sqrt(3.0);
        Statevector w(3, {0, s3, s3, 0, s3, 0, 0, 0});
        double h = 1 / std::sqrt(2.0);
        std::vector<cplx> ghz(16);
        ghz[0] = h;
        ghz[15] = h;
        std::string err;
        if (std::abs(meyer_wallach_q(w) - 8.0 / 9) > 1e-14) err += " W";
        if (std::abs(meyer_wallach_q(Statevector(4, ghz)) - 1) > 1e-14) err += " GHZ";
        if (std::abs(meyer_wallach_q(Statevector::basis(5, 19))) > 1e-14) err += " product";
        return err.empty() ? "" : "wrong Q for" + err;
    });

    check("eigensolver", [&]() -> std::string {
        const std::size_t dim = 96;
        Matrix a(dim, dim);
        CounterRng rng(RngHandle{seed, 0});
        for (std::size_t i = 0; i < dim; i++) {
            for (std::size_t j = 0; j <= i; j++) {
                a(i, j) = a(j, i) = rng.normal();
            }
        }
        Spectrum s = eigensolve_symmetric(a);
        double res = max_residual(a, s), orth = orthonormality_error(s);
        if (res > 1e-10 || orth > 1e-10) {
            return "residual " + fmt(res) + ", orthonormality " + fmt(orth) + " (faulty LAPACK/BLAS build?)";
        }
        return "";
    });
    return results;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Meyer-Wallach entanglement of localized states: measures, ensembles, closed forms, models",
                 "mwloc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // selftest
    auto* st = app.add_subcommand("selftest", "Run fast oracle and route-equivalence checks");
    SeedOption st_seed;
    st_seed.value = 1;
    st->add_option("--seed", st_seed.value, "Master seed")->capture_default_str();

    // theory
    auto* th = app.add_subcommand("theory", "Evaluate a closed-form prediction for <Q>");
    std::string formula;
    unsigned th_n = 0;
    double th_m = 0, th_inv = -1, th_eta = -1;
    std::string th_format = "text";
    bool th_list = false;
    std::string formula_help = "Formula name:";
    for (const auto& f : formula_names()) {
        formula_help += " " + f;
    }
    formula_help += " (aliases eq3 eq4 eq5 eq7 eq8 eq10)";
    th->add_option("--formula", formula, formula_help);
    th->add_option("--n", th_n, "Qubits n (dimension N = 2^n)");
    th->add_option("--m", th_m, "Support size M (basis states)");
    th->add_option("--inv-ipr", th_inv, "Ensemble mean <1/xi>, dimensionless in [1/N, 1]");
    th->add_option("--eta", th_eta, "Band filling n_b/n in [0, 1]");
    th->add_option("--format", th_format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    th->add_flag("--list", th_list, "List formula names and exit");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate over a random-state ensemble");
    std::string ensemble = "equal-amp-subset", profile = "equal-amp", envelope = "two-sided", sector = "none",
                route = "gram", mc_format = "csv", mc_out;
    unsigned mc_n = 8, mc_workers = 0;
    std::uint64_t mc_m = 8, samples = 10000;
    double loc_length = 1.0;
    SeedOption mc_seed;
    mc->add_option("--ensemble", ensemble,
                   "Ensemble: equal-amp-subset, haar-subset, adjacent, exp-envelope, cosine")
        ->capture_default_str();
    mc->add_option("--n", mc_n, "Qubits n")->capture_default_str();
    mc->add_option("--m", mc_m, "Support size M (basis states)")->capture_default_str();
    mc->add_option("--profile", profile, "Adjacent-window amplitudes: equal-amp or haar")
        ->check(CLI::IsMember({"equal-amp", "haar"}))
        ->capture_default_str();
    mc->add_option("--l", loc_length, "Localization length l of exp-envelope (basis states)")
        ->capture_default_str();
    mc->add_option("--envelope", envelope, "exp-envelope shape: one-sided or two-sided")
        ->check(CLI::IsMember({"one-sided", "two-sided"}))
        ->capture_default_str();
    mc->add_option("--sector", sector, "Restrict subset positions to a parity sector: none, even, odd")
        ->capture_default_str();
    mc->add_option("--samples", samples, "Number of independent states (>= 2)")->capture_default_str();
    mc->add_option("--route", route, "Q evaluation: gram, purity or checked (both, must agree to 1e-10)")
        ->capture_default_str();
    mc->add_option("--format", mc_format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    mc->add_option("--workers", mc_workers, "Worker threads (0 = available parallelism)")->capture_default_str();
    mc->add_option("--out", mc_out, "Directory for mc.csv and mc.meta (nothing written when absent)");
    mc_seed.add(mc);

    // model
    auto* md = app.add_subcommand("model", "Disorder-averaged eigenstate measures of a physical model");
    std::string model = "anderson", md_n = "6..10", selector = "nearest", md_format = "csv", md_out;
    std::uint64_t realizations = 100, states = 10;
    double fraction = 0, energy = 0, delta0 = 1, delta = 1, jj = 0.1, w = 1, p = 0;
    bool shuffle = false;
    unsigned md_workers = 0;
    SeedOption md_seed;
    md->add_option("--model", model, "Model: spin, anderson or smallworld")->capture_default_str();
    md->add_option("--n", md_n, "Qubit counts: list 8,10 or range 6..12")->capture_default_str();
    md->add_option("--realizations", realizations, "Disorder realizations per n (>= 2)")->capture_default_str();
    md->add_option("--states", states, "Eigenstates measured per realization")->capture_default_str();
    md->add_option("--fraction", fraction, "Measure round(fraction * N) eigenstates instead of --states")
        ->capture_default_str();
    md->add_option("--selector", selector, "Eigenstate selection: median (index) or nearest (energy)")
        ->check(CLI::IsMember({"median", "nearest"}))
        ->capture_default_str();
    md->add_option("--energy", energy, "Target energy for --selector nearest (units of the coupling)")
        ->capture_default_str();
    md->add_option("--delta0", delta0, "Spin: mean field Delta0 (energy units)")->capture_default_str();
    md->add_option("--delta", delta, "Spin: field spread delta (energy units)")->capture_default_str();
    md->add_option("--j", jj, "Spin: coupling range J, J_ij uniform in [-J, J] (energy units)")
        ->capture_default_str();
    md->add_option("--w", w, "Anderson/smallworld: on-site disorder std w (units of hopping)")
        ->capture_default_str();
    md->add_option("--p", p, "Smallworld: extra links per site p (round(pN) links)")->capture_default_str();
    md->add_flag("--shuffle", shuffle, "Also report states with components randomly permuted");
    md->add_option("--format", md_format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    md->add_option("--workers", md_workers, "Worker threads (0 = available parallelism)")->capture_default_str();
    md->add_option("--out", md_out, "Directory for model.csv and model.meta (nothing written when absent)");
    md_seed.add(md);

    // figure drivers
    struct FigOptions {
        std::string config;
        std::vector<std::string> sets;
        std::optional<std::string> n, sweep, out;
        std::optional<std::uint64_t> realizations;
        std::optional<unsigned> workers;
        SeedOption seed;
    };
    std::vector<std::pair<CLI::App*, FigOptions>> figs(4);
    const char* fig_desc[] = {
        "Per-band entanglement vs reduced localization length (spin model, delta << Delta0); sweep = J",
        "Spin model <Q> vs IPR, raw and shuffled components; sweep = J",
        "Anderson chain <Q> vs n with C/n tail fits, C vs xi inset, envelope panel; sweep = w",
        "Quantum smallworld <Q> and log10 <xi> vs n; sweep = p",
    };
    for (int i = 0; i < 4; i++) {
        std::string name = "fig" + std::to_string(i + 1);
        RunConfig def = default_run_config(name);
        auto* sub = app.add_subcommand(name, fig_desc[i]);
        FigOptions& o = figs[i].second;
        figs[i].first = sub;
        std::string defaults;
        for (const auto& [k, v] : def.settings()) {
            defaults += " " + k + "=" + v;
        }
        sub->footer("Defaults:" + defaults);
        sub->add_option("--config", o.config, "key=value file applied before flags");
        sub->add_option("--set", o.sets, "Override one setting, key=value (repeatable; keys as in the config file)");
        sub->add_option("--n", o.n, "Qubit counts: list or range lo..hi");
        sub->add_option("--sweep", o.sweep, "Comma-separated values of the scanned parameter");
        sub->add_option("--realizations", o.realizations, "Disorder realizations per point (>= 2)");
        sub->add_option("--workers", o.workers, "Worker threads (0 = available parallelism)");
        sub->add_option("--out", o.out, "Output directory");
        o.seed.add(sub);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (st->parsed()) {
            std::uint64_t seed = st_seed.resolve();
            echo(out, {{"command", "selftest"}, {"seed", std::to_string(seed)}});
            bool ok = true;
            for (const auto& r : run_selftest(seed)) {
                out << (r.pass ? "ok   " : "FAIL ") << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
                ok = ok && r.pass;
            }
            return ok ? 0 : 2;
        }
        if (th->parsed()) {
            if (th_list) {
                for (const auto& f : formula_names()) {
                    out << f << "\n";
                }
                return 0;
            }
            if (formula.empty()) {
                throw DomainError("--formula is required (see --list)");
            }
            FormulaId id = parse_formula(formula);
            TheoryInputs in;
            in.n = th_n;
            in.m = th_m;
            in.inv_ipr = th_inv;
            in.eta = th_eta;
            Prediction pr = evaluate(id, in);
            if (th_format == "json") {
                nlohmann::ordered_json j;
                j["formula"] = formula_name(id);
                for (const auto& [k, v] : pr.inputs) {
                    if (std::floor(v) == v && std::abs(v) < 9e15) {
                        j[k] = static_cast<std::int64_t>(v);
                    } else {
                        j[k] = v;
                    }
                }
                j["value"] = pr.value;
                out << j.dump() << "\n";
            } else {
                std::vector<std::pair<std::string, std::string>> kv{{"command", "theory"},
                                                                    {"formula", formula_name(id)}};
                for (const auto& [k, v] : pr.inputs) {
                    kv.emplace_back(k, fmt(v));
                }
                echo(out, kv);
                out << fmt(pr.value, 15) << "\n";
            }
            return 0;
        }
        if (mc->parsed()) {
            EnsembleSpec spec;
            spec.family = parse_family(ensemble);
            spec.m = mc_m;
            spec.profile = profile == "haar" ? Profile::Haar : Profile::EqualAmp;
            spec.loc_length = loc_length;
            spec.envelope = envelope == "two-sided" ? Envelope::TwoSided : Envelope::OneSided;
            spec.sector = parse_sector(sector);
            QRoute qr = parse_route(route);
            spec.validate(mc_n);
            std::uint64_t seed = mc_seed.resolve();
            std::vector<std::pair<std::string, std::string>> kv{
                {"command", "mc"},     {"ensemble", spec.describe()},        {"n", std::to_string(mc_n)},
                {"samples", std::to_string(samples)}, {"route", route}, {"seed", std::to_string(seed)}};
            ResultRow row = mc_estimate(spec, mc_n, samples, seed, mc_workers, qr);
            row.theory = mc_theory(spec, mc_n, row);
            if (mc_format == "json") {
                out << row_json(row).dump() << "\n";
            } else {
                echo(out, kv);
                print_table(out, result_table({row}));
            }
            if (!mc_out.empty()) {
                auto dir = ensure_dir(mc_out);
                write_csv(dir / "mc.csv", result_table({row}));
                write_sidecar(dir / "mc.meta", kv);
            }
            return 0;
        }
        if (md->parsed()) {
            ModelSpec ms;
            ms.kind = parse_model(model);
            ms.delta0 = delta0;
            ms.delta = delta;
            ms.j = jj;
            ms.w = w;
            ms.p = p;
            EigenRule rule;
            rule.count = states;
            rule.fraction = fraction;
            rule.selector = {selector == "median" ? Selection::MedianIndex : Selection::NearestEnergy, energy};
            auto n_list = parse_n_list(md_n);
            for (unsigned n : n_list) {
                if (ms.kind == ModelKind::Spin && n > kMaxSectorSpinQubits) {
                    throw ResourceError("spin model limited to n <= " + std::to_string(kMaxSectorSpinQubits));
                }
                if (ms.kind == ModelKind::Smallworld && n > kMaxSmallworldQubits) {
                    throw ResourceError("smallworld limited to n <= " + std::to_string(kMaxSmallworldQubits));
                }
                if (ms.kind == ModelKind::Anderson && n > kMaxAndersonQubits) {
                    throw ResourceError("Anderson chain limited to n <= " + std::to_string(kMaxAndersonQubits));
                }
            }
            std::uint64_t seed = md_seed.resolve();
            std::vector<std::pair<std::string, std::string>> kv{
                {"command", "model"},
                {"model", ms.describe()},
                {"n", md_n},
                {"realizations", std::to_string(realizations)},
                {"states", fraction > 0 ? "fraction=" + fmt(fraction) : std::to_string(states)},
                {"selector", selector},
                {"energy", fmt(energy)},
                {"shuffle", shuffle ? "true" : "false"},
                {"seed", std::to_string(seed)}};
            auto rows = disorder_sweep(ms, n_list, realizations, rule, seed, md_workers, shuffle);
            for (auto& r : rows) {
                if (ms.kind == ModelKind::Spin) {
                    r.theory = q_spin_sector(r.big_n, r.inv_ipr_mean);
                }
            }
            if (md_format == "json") {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& r : rows) {
                    j.push_back(row_json(r));
                }
                out << j.dump() << "\n";
            } else {
                echo(out, kv);
                print_table(out, result_table(rows));
                if (ms.kind != ModelKind::Spin && n_list.size() >= 2) {
                    std::vector<TailPoint> pts;
                    for (const auto& r : rows) {
                        if (r.series == "raw") pts.push_back({r.n, r.q_mean});
                    }
                    TailFit f = fit_tail_constant(pts);
                    out << "# fit C=" << fmt(f.c) << " residual=" << fmt(f.residual) << " points=" << f.points
                        << "\n";
                }
            }
            if (!md_out.empty()) {
                auto dir = ensure_dir(md_out);
                write_csv(dir / "model.csv", result_table(rows));
                write_sidecar(dir / "model.meta", kv);
            }
            return 0;
        }
        for (auto& [sub, o] : figs) {
            if (!sub->parsed()) {
                continue;
            }
            RunConfig cfg = default_run_config(sub->get_name());
            if (!o.config.empty()) {
                apply_config_file(cfg, o.config);
            }
            for (const auto& s : o.sets) {
                auto eq = s.find('=');
                if (eq == std::string::npos) {
                    throw DomainError("--set expects key=value, got '" + s + "'");
                }
                apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
            }
            if (o.n) apply_setting(cfg, "n", *o.n);
            if (o.sweep) apply_setting(cfg, "sweep", *o.sweep);
            if (o.realizations) cfg.realizations = *o.realizations;
            if (o.workers) cfg.workers = *o.workers;
            if (o.out) cfg.out_dir = *o.out;
            if (o.seed.value) {
                cfg.seed = *o.seed.value;
            } else if (!cfg.seed_given) {
                cfg.seed = entropy_seed();
            }
            cfg.validate();
            auto kv = cfg.settings();
            kv.insert(kv.begin(), {"command", cfg.experiment});
            echo(out, kv);
            DriverOutput res = run_driver(cfg);
            for (const auto& f : res.fits) {
                out << "# fit " << f.series << " C=" << fmt(f.c) << " residual=" << fmt(f.residual)
                    << " n=" << f.n_min << ".." << f.n_max << "\n";
            }
            for (const auto& f : res.files) {
                out << f.string() << "\n";
            }
            return 0;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace mwloc
