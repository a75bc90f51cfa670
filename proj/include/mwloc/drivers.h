#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mwloc/harness.h"

namespace mwloc {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a figure driver needs. `sweep` holds the scanned parameter:
/// J for fig1 and fig2, w for fig3, p for fig4.
struct RunConfig {
    std::string experiment;
    std::vector<unsigned> n_list;
    std::vector<double> sweep;
    ModelSpec model;
    std::uint64_t realizations = 100;
    EigenRule rule;
    std::size_t fit_window = 4;
    // fig3 envelope panel
    std::vector<double> envelope_l;
    unsigned envelope_n = 10;
    std::uint64_t envelope_samples = 1000;
    std::uint64_t seed = 1;
    bool seed_given = false;
    unsigned workers = 0;
    std::filesystem::path out_dir = "out";

    void validate() const;
    /// Resolved settings as key=value pairs in a fixed order (workers excluded).
    std::vector<std::pair<std::string, std::string>> settings() const;
};

/// Desk-scale defaults for fig1 .. fig4.
RunConfig default_run_config(const std::string& experiment);

/// Keys: n, sweep, realizations, states, fraction, selector, energy, delta0,
/// delta, j, w, p, fit-window, envelope-l, envelope-n, envelope-samples, seed,
/// workers, out. Lists are comma separated; n also accepts a range "6..12".
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
/// key=value lines; blank lines and lines starting with '#' are skipped.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

std::vector<unsigned> parse_n_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// ---- CSV ----

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string format_double(double x);

/// ResultRow columns followed by the extra columns named in `extras`.
std::vector<std::string> result_columns(const std::vector<std::string>& extras = {});
Table result_table(const std::vector<ResultRow>& rows, const std::vector<std::string>& extras = {},
                   const std::vector<std::vector<double>>& extra_values = {});

void write_csv(const std::filesystem::path& path, const Table& table);
Table read_csv(const std::filesystem::path& path);

enum class ColumnType { Text, Integer, Real };

struct ColumnRule {
    std::string name;
    ColumnType type = ColumnType::Real;
    double lo = -1e300;
    double hi = 1e300;
    bool allow_nan = true;
};

/// Problems found in `table` against `rules` (column names and order, types,
/// ranges). Empty when valid.
std::vector<std::string> validate_table(const Table& table, const std::vector<ColumnRule>& rules);
std::vector<ColumnRule> result_schema(const std::vector<std::string>& extras = {});
std::vector<ColumnRule> fit_schema();
std::vector<ColumnRule> inset_schema();

// ---- experiments shared by the drivers and the acceptance suite ----

/// Per-band averages over every eigenstate of `realizations` spin-model
/// draws. Each state is assigned to the band holding most of its weight; IPR
/// is taken on the band projection. theory = 4 eta (1 - eta).
/// Extra values per row: n_b, N_b, eta, 1/<N_b/xi>, q/theory.
struct BandRow {
    ResultRow row;
    unsigned n_b = 0;
    std::uint64_t band_size = 0;
    double eta = 0;
    double reduced_length = 0;
    double scaled = 0;
};
std::vector<BandRow> band_sweep(const ModelSpec& model, unsigned n, std::uint64_t realizations,
                                std::uint64_t seed, unsigned workers);

/// Haar states with exponential envelope at localization length l, compared
/// against the adjacent-window law at M = round(2 <xi>) and the measured <1/xi>.
struct EnvelopeCheck {
    ResultRow row;
    std::uint64_t m = 0;
};
EnvelopeCheck envelope_check(double l, unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned workers,
                             Envelope envelope = Envelope::TwoSided);

// ---- figure drivers ----

struct FitRow {
    std::string experiment;
    std::string series;
    double c = 0;
    double residual = 0;
    std::size_t points = 0;
    unsigned n_min = 0;
    unsigned n_max = 0;
};

struct DriverOutput {
    std::vector<ResultRow> rows;
    std::vector<FitRow> fits;
    std::vector<std::filesystem::path> files;
};

DriverOutput fig1_bands(const RunConfig& cfg);
DriverOutput fig2_spin(const RunConfig& cfg);
DriverOutput fig3_anderson(const RunConfig& cfg);
DriverOutput fig4_smallworld(const RunConfig& cfg);

DriverOutput run_driver(const RunConfig& cfg);

}  // namespace mwloc
