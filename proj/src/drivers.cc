#include "mwloc/drivers.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mwloc/errors.h"
#include "mwloc/theory.h"

namespace mwloc {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    std::string t = trim(text);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw DomainError(what + ": not a number: '" + text + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::string t = trim(text);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size()) {
        throw DomainError(what + ": not a non-negative integer: '" + text + "'");
    }
    return v;
}

std::string join_doubles(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); i++) {
        s += (i ? "," : "") + format_double(xs[i]);
    }
    return s;
}

std::string join_n(const std::vector<unsigned>& ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); i++) {
        s += (i ? "," : "") + std::to_string(ns[i]);
    }
    return s;
}

bool is_spin_experiment(const std::string& e) { return e == "fig1" || e == "fig2"; }

}  // namespace

std::vector<unsigned> parse_n_list(const std::string& text) {
    std::vector<unsigned> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        auto lo = parse_u64(text.substr(0, dots), "n range");
        auto hi = parse_u64(text.substr(dots + 2), "n range");
        if (lo > hi || hi > 62) {
            throw DomainError("n range must be lo..hi with lo <= hi <= 62");
        }
        for (auto n = lo; n <= hi; n++) {
            out.push_back(static_cast<unsigned>(n));
        }
        return out;
    }
    for (const auto& part : split(text, ',')) {
        auto n = parse_u64(part, "n list");
        if (n > 62) {
            throw DomainError("n must be <= 62");
        }
        out.push_back(static_cast<unsigned>(n));
    }
    if (out.empty()) {
        throw DomainError("n list must not be empty");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        out.push_back(parse_double(part, "list"));
    }
    if (out.empty()) {
        throw DomainError("list must not be empty");
    }
    return out;
}

// ---- RunConfig ----

RunConfig default_run_config(const std::string& experiment) {
    RunConfig c;
    c.experiment = experiment;
    if (experiment == "fig1") {
        c.n_list = {8, 10};
        c.sweep = {0.05};
        c.model.kind = ModelKind::Spin;
        c.model.delta0 = 1.0;
        c.model.delta = 0.01;
        c.realizations = 5;
    } else if (experiment == "fig2") {
        c.n_list = {8, 10};
        c.sweep = {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0};
        c.model.kind = ModelKind::Spin;
        c.model.delta0 = 1.0;
        c.model.delta = 1.0;
        c.realizations = 100;
        c.rule.fraction = 1.0 / 16;
        c.rule.selector = {Selection::MedianIndex, 0.0};
    } else if (experiment == "fig3") {
        c.n_list = parse_n_list("6..12");
        c.sweep = {0.5, 1.0, 1.5, 2.0, 2.5};
        c.model.kind = ModelKind::Anderson;
        c.realizations = 200;
        c.envelope_l = {2, 4, 8};
    } else if (experiment == "fig4") {
        c.n_list = parse_n_list("6..11");
        c.sweep = {0.001, 0.005, 0.01, 0.03, 0.06};
        c.model.kind = ModelKind::Smallworld;
        c.model.w = 1.0;
        c.realizations = 20;
    } else {
        throw DomainError("unknown experiment '" + experiment + "' (expected fig1, fig2, fig3 or fig4)");
    }
    return c;
}

void RunConfig::validate() const {
    (void)default_run_config(experiment);
    if (n_list.empty()) {
        throw DomainError("n list must not be empty");
    }
    if (sweep.empty()) {
        throw DomainError("sweep list must not be empty");
    }
    if (realizations < 2) {
        throw DomainError("realizations must be >= 2");
    }
    if (fit_window < 2) {
        throw DomainError("fit-window must be >= 2");
    }
    for (unsigned n : n_list) {
        if (n < 2) {
            throw DomainError("n must be >= 2");
        }
        if (is_spin_experiment(experiment) && n > kMaxSectorSpinQubits) {
            throw ResourceError("spin model limited to n <= " + std::to_string(kMaxSectorSpinQubits));
        }
        if (experiment == "fig3" && n > kMaxAndersonQubits) {
            throw ResourceError("Anderson chain limited to n <= " + std::to_string(kMaxAndersonQubits));
        }
        if (experiment == "fig4" && n > kMaxSmallworldQubits) {
            throw ResourceError("smallworld limited to n <= " + std::to_string(kMaxSmallworldQubits));
        }
    }
    if ((experiment == "fig3" || experiment == "fig4") && n_list.size() < 2) {
        throw DomainError("tail fits need at least 2 values of n");
    }
    if (experiment == "fig3") {
        if (envelope_samples < 2) {
            throw DomainError("envelope-samples must be >= 2");
        }
        for (double l : envelope_l) {
            if (!(l > 0)) {
                throw DomainError("envelope-l values must be positive");
            }
        }
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::settings() const {
    std::vector<std::pair<std::string, std::string>> s;
    s.emplace_back("experiment", experiment);
    s.emplace_back("n", join_n(n_list));
    s.emplace_back("sweep", join_doubles(sweep));
    s.emplace_back("realizations", std::to_string(realizations));
    if (is_spin_experiment(experiment)) {
        s.emplace_back("delta0", format_double(model.delta0));
        s.emplace_back("delta", format_double(model.delta));
    } else {
        s.emplace_back("w", format_double(model.w));
    }
    if (experiment != "fig1") {
        s.emplace_back("states", std::to_string(rule.count));
        s.emplace_back("fraction", format_double(rule.fraction));
        s.emplace_back("selector", rule.selector.kind == Selection::MedianIndex ? "median" : "nearest");
        s.emplace_back("energy", format_double(rule.selector.energy));
    }
    if (experiment == "fig3" || experiment == "fig4") {
        s.emplace_back("fit-window", std::to_string(fit_window));
    }
    if (experiment == "fig3") {
        s.emplace_back("envelope-l", join_doubles(envelope_l));
        s.emplace_back("envelope-n", std::to_string(envelope_n));
        s.emplace_back("envelope-samples", std::to_string(envelope_samples));
    }
    s.emplace_back("seed", std::to_string(seed));
    s.emplace_back("out", out_dir.string());
    return s;
}

void apply_setting(RunConfig& c, const std::string& key_in, const std::string& value_in) {
    std::string key = trim(key_in);
    std::string value = trim(value_in);
    if (key == "n") {
        c.n_list = parse_n_list(value);
    } else if (key == "sweep") {
        c.sweep = parse_double_list(value);
    } else if (key == "realizations") {
        c.realizations = parse_u64(value, key);
    } else if (key == "states") {
        c.rule.count = parse_u64(value, key);
        c.rule.fraction = 0;
    } else if (key == "fraction") {
        c.rule.fraction = parse_double(value, key);
    } else if (key == "selector") {
        if (value == "median") {
            c.rule.selector.kind = Selection::MedianIndex;
        } else if (value == "nearest") {
            c.rule.selector.kind = Selection::NearestEnergy;
        } else {
            throw DomainError("selector must be 'median' or 'nearest'");
        }
    } else if (key == "energy") {
        c.rule.selector.energy = parse_double(value, key);
    } else if (key == "delta0") {
        c.model.delta0 = parse_double(value, key);
    } else if (key == "delta") {
        c.model.delta = parse_double(value, key);
    } else if (key == "j") {
        c.sweep = {parse_double(value, key)};
    } else if (key == "w") {
        if (c.experiment == "fig3") {
            c.sweep = {parse_double(value, key)};
        } else {
            c.model.w = parse_double(value, key);
        }
    } else if (key == "p") {
        c.sweep = {parse_double(value, key)};
    } else if (key == "fit-window") {
        c.fit_window = parse_u64(value, key);
    } else if (key == "envelope-l") {
        c.envelope_l = value.empty() ? std::vector<double>{} : parse_double_list(value);
    } else if (key == "envelope-n") {
        c.envelope_n = static_cast<unsigned>(parse_u64(value, key));
    } else if (key == "envelope-samples") {
        c.envelope_samples = parse_u64(value, key);
    } else if (key == "seed") {
        c.seed = parse_u64(value, key);
        c.seed_given = true;
    } else if (key == "workers") {
        c.workers = static_cast<unsigned>(parse_u64(value, key));
    } else if (key == "out") {
        c.out_dir = value;
    } else {
        throw DomainError("unknown setting '" + key + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot read config file " + path.string());
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        apply_setting(cfg, t.substr(0, eq), t.substr(eq + 1));
    }
}

// ---- CSV ----

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<std::string> result_columns(const std::vector<std::string>& extras) {
    std::vector<std::string> cols = {"experiment", "series",       "n",          "big_n",          "params",
                                     "q_mean",     "q_stderr",     "ipr_mean",   "inv_ipr_mean",   "inv_ipr_stderr",
                                     "cxx_mean",   "cxy_mean",     "theory",     "samples",        "states",
                                     "seed"};
    cols.insert(cols.end(), extras.begin(), extras.end());
    return cols;
}

Table result_table(const std::vector<ResultRow>& rows, const std::vector<std::string>& extras,
                   const std::vector<std::vector<double>>& extra_values) {
    if (!extras.empty() && extra_values.size() != rows.size()) {
        throw DomainError("extra values must match rows");
    }
    Table t;
    t.columns = result_columns(extras);
    for (std::size_t i = 0; i < rows.size(); i++) {
        const ResultRow& r = rows[i];
        std::vector<std::string> f = {r.experiment,
                                      r.series,
                                      std::to_string(r.n),
                                      std::to_string(r.big_n),
                                      r.params,
                                      format_double(r.q_mean),
                                      format_double(r.q_stderr),
                                      format_double(r.ipr_mean),
                                      format_double(r.inv_ipr_mean),
                                      format_double(r.inv_ipr_stderr),
                                      format_double(r.cxx_mean),
                                      format_double(r.cxy_mean),
                                      format_double(r.theory),
                                      std::to_string(r.samples),
                                      std::to_string(r.states),
                                      std::to_string(r.seed)};
        if (!extras.empty()) {
            if (extra_values[i].size() != extras.size()) {
                throw DomainError("extra values must match extra columns");
            }
            for (double v : extra_values[i]) {
                f.push_back(format_double(v));
            }
        }
        t.rows.push_back(std::move(f));
    }
    return t;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
    auto check = [](const std::string& field) {
        if (field.find_first_of(",\n\"") != std::string::npos) {
            throw DomainError("CSV field may not contain commas, quotes or newlines: " + field);
        }
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ResourceError("cannot write " + path.string());
    }
    for (std::size_t i = 0; i < table.columns.size(); i++) {
        check(table.columns[i]);
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw DomainError("CSV row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); i++) {
            check(row[i]);
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    if (!out) {
        throw ResourceError("write failed for " + path.string());
    }
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError("cannot read " + path.string());
    }
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw DomainError(path.string() + ": empty file");
    }
    t.columns = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        t.rows.push_back(split(line, ','));
    }
    return t;
}

std::vector<std::string> validate_table(const Table& table, const std::vector<ColumnRule>& rules) {
    std::vector<std::string> problems;
    if (table.columns.size() != rules.size()) {
        problems.push_back("expected " + std::to_string(rules.size()) + " columns, found " +
                           std::to_string(table.columns.size()));
        return problems;
    }
    for (std::size_t c = 0; c < rules.size(); c++) {
        if (table.columns[c] != rules[c].name) {
            problems.push_back("column " + std::to_string(c) + " is '" + table.columns[c] + "', expected '" +
                               rules[c].name + "'");
        }
    }
    if (!problems.empty()) {
        return problems;
    }
    for (std::size_t r = 0; r < table.rows.size(); r++) {
        const auto& row = table.rows[r];
        std::string where = "row " + std::to_string(r + 1);
        if (row.size() != rules.size()) {
            problems.push_back(where + ": " + std::to_string(row.size()) + " fields");
            continue;
        }
        for (std::size_t c = 0; c < rules.size(); c++) {
            const ColumnRule& rule = rules[c];
            const std::string& f = row[c];
            if (rule.type == ColumnType::Text) {
                continue;
            }
            double v;
            if (rule.type == ColumnType::Integer) {
                std::uint64_t u = 0;
                auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), u);
                if (f.empty() || ec != std::errc() || p != f.data() + f.size()) {
                    problems.push_back(where + ": " + rule.name + " '" + f + "' is not an integer");
                    continue;
                }
                v = static_cast<double>(u);
            } else {
                char* end = nullptr;
                v = std::strtod(f.c_str(), &end);
                if (f.empty() || end != f.c_str() + f.size()) {
                    problems.push_back(where + ": " + rule.name + " '" + f + "' is not a number");
                    continue;
                }
                if (std::isnan(v)) {
                    if (!rule.allow_nan) {
                        problems.push_back(where + ": " + rule.name + " is nan");
                    }
                    continue;
                }
            }
            if (v < rule.lo || v > rule.hi) {
                problems.push_back(where + ": " + rule.name + " = " + f + " out of range");
            }
        }
    }
    return problems;
}

std::vector<ColumnRule> result_schema(const std::vector<std::string>& extras) {
    constexpr double eps = 1e-9;
    constexpr double big = 1e300;
    std::vector<ColumnRule> rules = {
        {"experiment", ColumnType::Text},
        {"series", ColumnType::Text},
        {"n", ColumnType::Integer, 1, 62, false},
        {"big_n", ColumnType::Integer, 2, big, false},
        {"params", ColumnType::Text},
        {"q_mean", ColumnType::Real, -eps, 1 + eps, false},
        {"q_stderr", ColumnType::Real, 0, big, true},
        {"ipr_mean", ColumnType::Real, 1 - eps, big, false},
        {"inv_ipr_mean", ColumnType::Real, -eps, 1 + eps, false},
        {"inv_ipr_stderr", ColumnType::Real, 0, big, true},
        {"cxx_mean", ColumnType::Real, -big, big, true},
        {"cxy_mean", ColumnType::Real, -big, big, true},
        {"theory", ColumnType::Real, -big, big, true},
        {"samples", ColumnType::Integer, 1, big, false},
        {"states", ColumnType::Integer, 1, big, false},
        {"seed", ColumnType::Integer, 0, big, false},
    };
    for (const auto& e : extras) {
        rules.push_back({e, ColumnType::Real, -big, big, true});
    }
    return rules;
}

std::vector<ColumnRule> fit_schema() {
    return {
        {"experiment", ColumnType::Text},
        {"series", ColumnType::Text},
        {"c", ColumnType::Real, 0, 1e300, false},
        {"residual", ColumnType::Real, 0, 1e300, false},
        {"points", ColumnType::Integer, 2, 1e300, false},
        {"n_min", ColumnType::Integer, 1, 62, false},
        {"n_max", ColumnType::Integer, 1, 62, false},
    };
}

std::vector<ColumnRule> inset_schema() {
    return {
        {"series", ColumnType::Text},
        {"xi", ColumnType::Real, 1 - 1e-9, 1e300, false},
        {"c", ColumnType::Real, 0, 1e300, true},
        {"c_adjacent", ColumnType::Real, 0, 1e300, false},
        {"c_cosine", ColumnType::Real, 0, 1e300, false},
    };
}

// ---- shared experiments ----

namespace {

struct BandAccum {
    double q = 0, ipr = 0, inv = 0, reduced = 0, cxx = 0, cxy = 0;
    std::uint64_t count = 0;
};

}  // namespace

std::vector<BandRow> band_sweep(const ModelSpec& model, unsigned n, std::uint64_t realizations,
                                std::uint64_t seed, unsigned workers) {
    if (model.kind != ModelKind::Spin) {
        throw DomainError("band analysis needs the spin model");
    }
    if (realizations < 2) {
        throw DomainError("disorder averages need at least 2 realizations");
    }
    SpinModelParams params{n, model.delta0, model.delta, model.j};
    params.validate();
    std::vector<double> band_size(n + 1);
    for (unsigned b = 0; b <= n; b++) {
        band_size[b] = static_cast<double>(band_basis(n, b).size());
    }
    auto per_real = parallel_map(realizations, workers, [&](std::size_t i) {
        CounterRng rng(RngHandle{seed, i});
        auto states = spin_all_eigenstates(draw_spin_disorder(params, rng));
        std::vector<BandAccum> acc(n + 1);
        for (const auto& es : states) {
            auto w = band_weights(es.state);
            auto b = static_cast<unsigned>(std::max_element(w.begin(), w.end()) - w.begin());
            double xi = band_ipr(es.state, b);
            MeasureReport m = measure(es.state);
            BandAccum& a = acc[b];
            a.q += m.q;
            a.ipr += xi;
            a.inv += 1 / xi;
            a.reduced += band_size[b] / xi;
            a.cxx += m.cxx;
            a.cxy += m.cxy;
            a.count++;
        }
        return acc;
    });
    std::vector<BandRow> out;
    for (unsigned b = 0; b <= n; b++) {
        RunningStats q, inv;
        BandAccum total;
        std::uint64_t reals = 0;
        for (const auto& acc : per_real) {
            const BandAccum& a = acc[b];
            if (a.count == 0) {
                continue;
            }
            reals++;
            double k = static_cast<double>(a.count);
            q.add(a.q / k);
            inv.add(a.inv / k);
            total.q += a.q;
            total.ipr += a.ipr;
            total.inv += a.inv;
            total.reduced += a.reduced;
            total.cxx += a.cxx;
            total.cxy += a.cxy;
            total.count += a.count;
        }
        if (total.count == 0) {
            continue;
        }
        double k = static_cast<double>(total.count);
        BandRow br;
        br.n_b = b;
        br.band_size = static_cast<std::uint64_t>(band_size[b]);
        br.eta = static_cast<double>(b) / n;
        ResultRow& r = br.row;
        r.experiment = "bands";
        r.series = "band=" + std::to_string(b);
        r.n = n;
        r.big_n = std::uint64_t{1} << n;
        r.params = model.describe();
        // Pooled means weight every state equally; stderr from per-realization means.
        r.q_mean = total.q / k;
        r.q_stderr = q.stderr_mean();
        r.ipr_mean = total.ipr / k;
        r.inv_ipr_mean = total.inv / k;
        r.inv_ipr_stderr = inv.stderr_mean();
        r.cxx_mean = total.cxx / k;
        r.cxy_mean = total.cxy / k;
        r.theory = q_band_limit(br.eta);
        r.samples = reals;
        r.states = total.count;
        r.seed = seed;
        br.reduced_length = k / total.reduced;
        br.scaled = r.theory > 0 ? r.q_mean / r.theory : std::numeric_limits<double>::quiet_NaN();
        out.push_back(br);
    }
    return out;
}

EnvelopeCheck envelope_check(double l, unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned workers,
                             Envelope envelope) {
    EnsembleSpec spec;
    spec.family = Family::ExpEnvelopeHaar;
    spec.loc_length = l;
    spec.envelope = envelope;
    EnvelopeCheck out;
    out.row = mc_estimate(spec, n, samples, seed, workers);
    out.row.experiment = "envelope";
    out.m = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::llround(2 * out.row.ipr_mean)));
    out.m = std::min<std::uint64_t>(out.m, out.row.big_n / 2);
    out.row.theory = q_adjacent_exact(n, out.m, out.row.inv_ipr_mean);
    return out;
}

// ---- drivers ----

namespace {

std::filesystem::path prepare(const RunConfig& cfg) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) {
        throw ResourceError("cannot create " + cfg.out_dir.string() + ": " + ec.message());
    }
    return cfg.out_dir;
}

void write_checked(DriverOutput& out, const std::filesystem::path& path, const Table& t,
                   const std::vector<ColumnRule>& schema) {
    auto problems = validate_table(t, schema);
    if (!problems.empty()) {
        throw NumericError(path.filename().string() + " failed schema validation: " + problems.front());
    }
    write_csv(path, t);
    out.files.push_back(path);
}

void write_text(DriverOutput& out, const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ResourceError("cannot write " + path.string());
    }
    f << text;
    out.files.push_back(path);
}

void write_meta(DriverOutput& out, const RunConfig& cfg) {
    std::string text = "version=" + std::string(kVersion) + "\n";
    for (const auto& [k, v] : cfg.settings()) {
        text += k + "=" + v + "\n";
    }
    text += "files=";
    for (std::size_t i = 0; i < out.files.size(); i++) {
        text += (i ? "," : "") + out.files[i].filename().string();
    }
    text += "\n";
    write_text(out, cfg.out_dir / (cfg.experiment + ".meta"), text);
}

Table fit_table(const std::vector<FitRow>& fits) {
    Table t;
    for (const auto& r : fit_schema()) {
        t.columns.push_back(r.name);
    }
    for (const auto& f : fits) {
        t.rows.push_back({f.experiment, f.series, format_double(f.c), format_double(f.residual),
                          std::to_string(f.points), std::to_string(f.n_min), std::to_string(f.n_max)});
    }
    return t;
}

std::string sweep_label(const char* name, double v) { return std::string(name) + "=" + format_double(v); }

FitRow fit_rows(const std::string& experiment, const std::string& series, const std::vector<ResultRow>& rows,
                std::size_t window) {
    std::vector<TailPoint> pts;
    for (const auto& r : rows) {
        pts.push_back({r.n, r.q_mean});
    }
    TailFit f = fit_tail_constant(pts, window);
    std::sort(pts.begin(), pts.end(), [](const TailPoint& a, const TailPoint& b) { return a.n < b.n; });
    return {experiment, series, f.c, f.residual, f.points, pts[pts.size() - f.points].n, pts.back().n};
}

}  // namespace

DriverOutput fig1_bands(const RunConfig& cfg) {
    auto dir = prepare(cfg);
    DriverOutput out;
    std::vector<std::vector<double>> extra;
    for (double j : cfg.sweep) {
        ModelSpec m = cfg.model;
        m.kind = ModelKind::Spin;
        m.j = j;
        for (unsigned n : cfg.n_list) {
            for (auto& br : band_sweep(m, n, cfg.realizations, cfg.seed, cfg.workers)) {
                br.row.experiment = "fig1";
                out.rows.push_back(br.row);
                extra.push_back({static_cast<double>(br.n_b), static_cast<double>(br.band_size), br.eta,
                                 br.reduced_length, br.scaled});
            }
        }
    }
    std::vector<std::string> cols = {"n_b", "band_size", "eta", "reduced_length", "scaled"};
    write_checked(out, dir / "fig1.csv", result_table(out.rows, cols, extra), result_schema(cols));
    write_text(out, dir / "fig1.gp",
               "set datafile separator ','\n"
               "set xlabel '<N_b/xi>^{-1}'\n"
               "set ylabel '<Q> / 4 eta (1 - eta)'\n"
               "plot 'fig1.csv' using (column('reduced_length')):(column('scaled')) "
               "with points title 'bands', 1 with lines title 'asymptote'\n");
    write_meta(out, cfg);
    return out;
}

DriverOutput fig2_spin(const RunConfig& cfg) {
    auto dir = prepare(cfg);
    DriverOutput out;
    std::vector<std::vector<double>> extra;
    for (double j : cfg.sweep) {
        ModelSpec m = cfg.model;
        m.kind = ModelKind::Spin;
        m.j = j;
        for (unsigned n : cfg.n_list) {
            auto data = run_realizations(m, n, cfg.rule, cfg.realizations, cfg.seed, cfg.workers, true);
            double big_n = std::ldexp(1.0, static_cast<int>(n));
            for (bool shuffled : {false, true}) {
                ResultRow row = summarize_realizations(data, shuffled);
                row.experiment = "fig2";
                row.series = shuffled ? "shuffled" : "raw";
                row.n = n;
                row.big_n = std::uint64_t{1} << n;
                row.params = m.describe();
                row.seed = cfg.seed;
                row.theory = q_spin_sector(row.big_n, row.inv_ipr_mean);
                RunningStats sxx, sxy;
                for (const auto& d : data) {
                    for (const auto& rec : shuffled ? d.shuffled : d.raw) {
                        sxx.add(rec.sector_cxx);
                        sxy.add(rec.sector_cxy);
                    }
                }
                double half = big_n / 2;
                extra.push_back({row.q_mean * (big_n - 2) / big_n, half * (half - 1) * row.cxx_mean, sxx.mean(),
                                 sxy.mean()});
                out.rows.push_back(row);
            }
        }
    }
    std::vector<std::string> cols = {"scaled_q", "scaled_cxx", "sector_cxx", "sector_cxy"};
    write_checked(out, dir / "fig2.csv", result_table(out.rows, cols, extra), result_schema(cols));
    write_text(out, dir / "fig2.gp",
               "set datafile separator ','\n"
               "set logscale x\n"
               "set xlabel 'xi'\n"
               "set ylabel '<Q> (N-2)/N'\n"
               "plot 'fig2.csv' using (strcol('series') eq 'raw' ? column('ipr_mean') : NaN):(column('scaled_q')) "
               "with points title 'raw', \\\n"
               "     'fig2.csv' using (strcol('series') eq 'shuffled' ? column('ipr_mean') : NaN):"
               "(column('scaled_q')) with points title 'shuffled', \\\n"
               "     1 - 1/x with lines title 'theory'\n");
    write_meta(out, cfg);
    return out;
}

DriverOutput fig3_anderson(const RunConfig& cfg) {
    auto dir = prepare(cfg);
    DriverOutput out;
    Table inset;
    for (const auto& r : inset_schema()) {
        inset.columns.push_back(r.name);
    }
    auto inset_row = [&](const std::string& series, double xi, double c, double inv) {
        std::uint64_t m = std::max<std::int64_t>(2, std::llround(2 * xi));
        inset.rows.push_back({series, format_double(xi), format_double(c),
                              format_double(adjacent_tail_constant(m, inv)),
                              format_double(cosine_tail_constant(std::max(2.0, 2 * xi)))});
    };
    for (double w : cfg.sweep) {
        ModelSpec m = cfg.model;
        m.kind = ModelKind::Anderson;
        m.w = w;
        auto rows = disorder_sweep(m, cfg.n_list, cfg.realizations, cfg.rule, cfg.seed, cfg.workers);
        std::string label = sweep_label("w", w);
        for (auto& r : rows) {
            r.experiment = "fig3";
            r.series = label;
        }
        FitRow fit = fit_rows("fig3", label, rows, cfg.fit_window);
        out.fits.push_back(fit);
        const ResultRow& last = *std::max_element(rows.begin(), rows.end(),
                                                  [](const ResultRow& a, const ResultRow& b) { return a.n < b.n; });
        inset_row("data:" + label, last.ipr_mean, fit.c, last.inv_ipr_mean);
        out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    }
    for (int k = 0; k <= 24; k++) {
        double xi = std::pow(2.0, k / 4.0);
        inset_row("theory", xi, std::numeric_limits<double>::quiet_NaN(), 1 / xi);
    }
    write_checked(out, dir / "fig3.csv", result_table(out.rows), result_schema());
    write_checked(out, dir / "fig3_fits.csv", fit_table(out.fits), fit_schema());
    write_checked(out, dir / "fig3_inset.csv", inset, inset_schema());
    if (!cfg.envelope_l.empty()) {
        std::vector<ResultRow> env;
        std::vector<std::vector<double>> extra;
        for (double l : cfg.envelope_l) {
            EnvelopeCheck e = envelope_check(l, cfg.envelope_n, cfg.envelope_samples, cfg.seed, cfg.workers);
            e.row.experiment = "fig3";
            e.row.series = sweep_label("l", l);
            env.push_back(e.row);
            extra.push_back({l, static_cast<double>(e.m)});
        }
        std::vector<std::string> cols = {"l", "m"};
        write_checked(out, dir / "fig3_envelope.csv", result_table(env, cols, extra), result_schema(cols));
    }
    write_text(out, dir / "fig3.gp",
               "set datafile separator ','\n"
               "set multiplot layout 1,2\n"
               "set xlabel 'n'\n"
               "set ylabel '<Q>'\n"
               "plot 'fig3.csv' using (column('n')):(column('q_mean')):(column('q_stderr')) "
               "with yerrorbars title 'Anderson'\n"
               "set logscale x\n"
               "set xlabel 'xi'\n"
               "set ylabel 'C'\n"
               "plot 'fig3_inset.csv' using (column('xi')):(column('c')) with points title 'fit', \\\n"
               "     'fig3_inset.csv' using (strcol('series') eq 'theory' ? column('xi') : NaN):"
               "(column('c_adjacent')) with lines title 'adjacent window', \\\n"
               "     'fig3_inset.csv' using (strcol('series') eq 'theory' ? column('xi') : NaN):"
               "(column('c_cosine')) with lines title 'cosine window'\n"
               "unset multiplot\n");
    write_meta(out, cfg);
    return out;
}

DriverOutput fig4_smallworld(const RunConfig& cfg) {
    auto dir = prepare(cfg);
    DriverOutput out;
    std::vector<std::vector<double>> extra;
    for (double p : cfg.sweep) {
        ModelSpec m = cfg.model;
        m.kind = ModelKind::Smallworld;
        m.p = p;
        auto rows = disorder_sweep(m, cfg.n_list, cfg.realizations, cfg.rule, cfg.seed, cfg.workers);
        std::string label = sweep_label("p", p);
        for (auto& r : rows) {
            r.experiment = "fig4";
            r.series = label;
            r.theory = 1 - r.inv_ipr_mean;
            extra.push_back({p, std::log10(r.ipr_mean)});
        }
        out.fits.push_back(fit_rows("fig4", label, rows, cfg.fit_window));
        out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    }
    std::vector<std::string> cols = {"p", "log10_ipr"};
    write_checked(out, dir / "fig4.csv", result_table(out.rows, cols, extra), result_schema(cols));
    write_checked(out, dir / "fig4_fits.csv", fit_table(out.fits), fit_schema());
    write_text(out, dir / "fig4.gp",
               "set datafile separator ','\n"
               "set multiplot layout 1,2\n"
               "set xlabel 'n'\n"
               "set ylabel '<Q>'\n"
               "plot 'fig4.csv' using (column('n')):(column('q_mean')):(column('p')) with points palette "
               "title '<Q>'\n"
               "set ylabel 'log10 <xi>'\n"
               "plot 'fig4.csv' using (column('n')):(column('log10_ipr')):(column('p')) with points palette "
               "title 'IPR'\n"
               "unset multiplot\n");
    write_meta(out, cfg);
    return out;
}

DriverOutput run_driver(const RunConfig& cfg) {
    if (cfg.experiment == "fig1") return fig1_bands(cfg);
    if (cfg.experiment == "fig2") return fig2_spin(cfg);
    if (cfg.experiment == "fig3") return fig3_anderson(cfg);
    if (cfg.experiment == "fig4") return fig4_smallworld(cfg);
    throw DomainError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace mwloc
