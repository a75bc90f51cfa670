#include "mwloc/theory.h"

#include <bit>
#include <cmath>
#include <string>

#include "mwloc/errors.h"

namespace mwloc {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw DomainError(what);
    }
}

void check_dim(std::uint64_t big_n) {
    require(big_n >= 2 && std::has_single_bit(big_n), "N must be a power of two >= 2");
}

void check_inv_ipr(double inv_ipr) {
    require(inv_ipr > 0 && inv_ipr <= 1, "mean inverse IPR must lie in (0, 1]");
}

// Smallest r0 with M <= 2^r0.
unsigned ceil_log2(std::uint64_t m) { return static_cast<unsigned>(std::bit_width(m - 1)); }

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

double q_random_subset(std::uint64_t big_n, double inv_ipr) {
    check_dim(big_n);
    check_inv_ipr(inv_ipr);
    double nn = static_cast<double>(big_n);
    return (nn - 2) / (nn - 1) * (1 - inv_ipr);
}

double q_cue_subset(std::uint64_t big_n, std::uint64_t m) {
    check_dim(big_n);
    require(m >= 1 && m <= big_n, "M must satisfy 1 <= M <= N");
    double nn = static_cast<double>(big_n), mm = static_cast<double>(m);
    return (mm - 1) / (mm + 1) * (nn - 2) / (nn - 1);
}

double q_equal_amp_subset(std::uint64_t big_n, std::uint64_t m) {
    check_dim(big_n);
    require(m >= 1 && m <= big_n, "M must satisfy 1 <= M <= N");
    double nn = static_cast<double>(big_n), mm = static_cast<double>(m);
    return (mm - 1) / mm * (nn - 2) / (nn - 1);
}

double q_lubkin(std::uint64_t big_n) {
    check_dim(big_n);
    double nn = static_cast<double>(big_n);
    return (nn - 2) / (nn + 1);
}

double q_sym_halved(std::uint64_t big_n, double inv_ipr) {
    check_dim(big_n);
    require(big_n / 2 > 1, "halved formula needs N/2 > 1");
    check_inv_ipr(inv_ipr);
    double half = static_cast<double>(big_n) / 2;
    return (half - 2) / (half - 1) * (1 - inv_ipr);
}

double q_spin_sector(std::uint64_t big_n, double inv_ipr) {
    check_dim(big_n);
    require(big_n >= 4, "sector formula needs N >= 4");
    check_inv_ipr(inv_ipr);
    double nn = static_cast<double>(big_n);
    // xi cannot exceed the sector size N/2.
    require(inv_ipr >= 2 / nn - 1e-12, "sector formula needs <1/xi> >= 2/N");
    return nn / (nn - 2) * (1 - inv_ipr);
}

double q_band_limit(double eta) {
    require(eta >= 0 && eta <= 1, "eta must lie in [0, 1]");
    return 4 * eta * (1 - eta);
}

double g_fun(double x) {
    require(x >= 0 && x < 3, "g(x) defined on [0, 3)");
    return std::abs(1 - std::abs(1 - x));
}

double g_r(unsigned r, double x) {
    double block = pow2(static_cast<int>(r));
    require(x >= 0 && x < 3 * block, "g_r(x) defined on [0, 3 * 2^r)");
    return block * g_fun(x / block);
}

double chi_r(unsigned r, std::int64_t x) {
    std::int64_t block = std::int64_t{1} << r;
    require(x >= 0 && x <= 2 * block, "chi_r(x) defined on [0, 2^{r+1}]");
    if (x > block) {
        x = 2 * block - x;
    }
    double xd = static_cast<double>(x);
    return xd * xd - (2.0 / 3.0) * xd * (xd * xd - 1) / static_cast<double>(block);
}

KT k_t_adjacent(unsigned r, std::int64_t c_r, std::int64_t m_r, std::int64_t m, WindowSide side) {
    std::int64_t block = std::int64_t{1} << r;
    require(c_r >= 0 && c_r < block, "c_r must lie in [0, 2^r)");
    require(m_r == m % (2 * block), "m_r must equal M mod 2^{r+1}");
    require(m >= 1, "M must be positive");
    // g_r on integers: |2^r - |2^r - x||.
    std::int64_t x = m_r + c_r;
    std::int64_t g = static_cast<std::int64_t>(g_r(r, static_cast<double>(x)));
    std::int64_t k2, t2;
    if (side == WindowSide::UStart) {
        k2 = m - c_r + g;
        t2 = m - c_r - g;
    } else {
        k2 = m + c_r - g;
        t2 = m + c_r - 2 * block + g;
    }
    if ((k2 & 1) || (t2 & 1) || k2 < 0 || t2 < 0) {
        throw NumericError("k_t_adjacent: non-integral or negative (k, t); formula used outside r < r0");
    }
    return {k2 / 2, t2 / 2};
}

double q_adjacent_exact(unsigned n, std::uint64_t m, double inv_ipr) {
    require(n >= 2 && n <= 62, "qubit count out of range");
    std::uint64_t big_n = std::uint64_t{1} << n;
    require(m >= 2 && m <= big_n / 2, "adjacent formula needs 2 <= M <= N/2");
    check_inv_ipr(inv_ipr);
    unsigned r0 = ceil_log2(m);
    double mm = static_cast<double>(m);
    double chi_sum = 0;
    for (unsigned r = 0; r < r0; r++) {
        std::uint64_t m_r = m % (std::uint64_t{2} << r);
        chi_sum += chi_r(r, static_cast<std::int64_t>(m_r));
    }
    double pair = mm * (mm - 1);
    double bracket = (mm - 2) / (mm - 1) * r0 + 2 * (pow2(static_cast<int>(r0)) - 1) / pair +
                     4.0 / 3.0 * (mm + 1) * (1 - pow2(static_cast<int>(r0) - static_cast<int>(n))) /
                         pow2(static_cast<int>(r0)) -
                     chi_sum / pair;
    return bracket * (1 - inv_ipr) / n;
}

double q_adjacent_pow2(unsigned n, double m, double inv_ipr) {
    require(n >= 2 && n <= 62, "qubit count out of range");
    require(m >= 2, "M must be >= 2");
    check_inv_ipr(inv_ipr);
    double r0 = std::log2(m);
    double big_n = pow2(static_cast<int>(n));
    double bracket = ((r0 + 4.0 / 3.0) * m * m - 2 * (r0 - 1) * m - 10.0 / 3.0) / (m * (m - 1)) -
                     4 * (m + 1) / (3 * big_n);
    return bracket * (1 - inv_ipr) / n;
}

double q_adjacent_oracle(unsigned n, std::uint64_t m, double inv_ipr) {
    require(n >= 2 && n <= 24, "oracle qubit count out of range");
    std::uint64_t big_n = std::uint64_t{1} << n;
    require(m >= 2 && m <= big_n / 2, "oracle needs 2 <= M <= N/2");
    check_inv_ipr(inv_ipr);
    std::vector<char> member(big_n, 0);
    std::vector<std::uint64_t> support(m);
    std::int64_t total = 0;
    for (std::uint64_t c = 0; c < big_n; c++) {
        for (std::uint64_t j = 0; j < m; j++) {
            support[j] = (c + j) % big_n;
            member[support[j]] = 1;
        }
        for (unsigned r = 0; r < n; r++) {
            std::uint64_t bit = std::uint64_t{1} << r;
            std::int64_t k = 0, t = 0;
            for (auto i : support) {
                if (!(i & bit)) {
                    k++;
                    if (member[i | bit]) {
                        t++;
                    }
                }
            }
            auto mi = static_cast<std::int64_t>(m);
            total += k * (mi - k) - t;
        }
        for (auto i : support) {
            member[i] = 0;
        }
    }
    double mm = static_cast<double>(m);
    return 4.0 * static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(big_n)) /
           (mm * (mm - 1)) * (1 - inv_ipr);
}

double q_cosine(unsigned n, std::uint64_t m) {
    require(m >= 2 && std::has_single_bit(m), "cosine formula needs M = 2^{r0}");
    unsigned r0 = static_cast<unsigned>(std::countr_zero(m));
    require(r0 < n && n <= 62, "cosine formula needs r0 < n");
    double mm = static_cast<double>(m);
    double value = 26.0 / 9.0 - 4 / mm - 8 * (3.0 * r0 + 1) / (9 * mm * mm) -
                   4 * (mm * mm - 4) / (3 * mm * pow2(static_cast<int>(n)));
    return value / n;
}

double adjacent_tail_constant(std::uint64_t m, double inv_ipr) {
    require(m >= 2, "M must be >= 2");
    check_inv_ipr(inv_ipr);
    unsigned r0 = ceil_log2(m);
    double mm = static_cast<double>(m);
    double chi_sum = 0;
    for (unsigned r = 0; r < r0; r++) {
        chi_sum += chi_r(r, static_cast<std::int64_t>(m % (std::uint64_t{2} << r)));
    }
    double pair = mm * (mm - 1);
    double bracket = (mm - 2) / (mm - 1) * r0 + 2 * (pow2(static_cast<int>(r0)) - 1) / pair +
                     4.0 / 3.0 * (mm + 1) / pow2(static_cast<int>(r0)) - chi_sum / pair;
    return bracket * (1 - inv_ipr);
}

double cosine_tail_constant(double m) {
    require(m >= 2, "M must be >= 2");
    double r0 = std::log2(m);
    return 26.0 / 9.0 - 4 / m - 8 * (3 * r0 + 1) / (9 * m * m);
}

namespace {

std::uint64_t integral_m(double m) {
    require(m >= 1 && std::floor(m) == m, "M must be a positive integer");
    return static_cast<std::uint64_t>(m);
}

std::uint64_t dim_from(unsigned n) {
    require(n >= 1 && n <= 62, "--n (qubits) must be given, 1 <= n <= 62");
    return std::uint64_t{1} << n;
}

}  // namespace

Prediction evaluate(FormulaId id, const TheoryInputs& in) {
    Prediction p{id, {}, 0};
    auto add = [&p](const char* name, double v) { p.inputs.emplace_back(name, v); };
    switch (id) {
        case FormulaId::RandomSubset:
            p.value = q_random_subset(dim_from(in.n), in.inv_ipr);
            add("N", static_cast<double>(dim_from(in.n)));
            add("inv_ipr", in.inv_ipr);
            break;
        case FormulaId::CueSubset:
            p.value = q_cue_subset(dim_from(in.n), integral_m(in.m));
            add("N", static_cast<double>(dim_from(in.n)));
            add("M", in.m);
            break;
        case FormulaId::EqualAmpSubset:
            p.value = q_equal_amp_subset(dim_from(in.n), integral_m(in.m));
            add("N", static_cast<double>(dim_from(in.n)));
            add("M", in.m);
            break;
        case FormulaId::SymHalved:
            p.value = q_sym_halved(dim_from(in.n), in.inv_ipr);
            add("N", static_cast<double>(dim_from(in.n)));
            add("inv_ipr", in.inv_ipr);
            break;
        case FormulaId::SpinSector:
            p.value = q_spin_sector(dim_from(in.n), in.inv_ipr);
            add("N", static_cast<double>(dim_from(in.n)));
            add("inv_ipr", in.inv_ipr);
            break;
        case FormulaId::BandLimit:
            p.value = q_band_limit(in.eta);
            add("eta", in.eta);
            break;
        case FormulaId::AdjacentExact:
            p.value = q_adjacent_exact(in.n, integral_m(in.m), in.inv_ipr);
            add("n", in.n);
            add("M", in.m);
            add("inv_ipr", in.inv_ipr);
            break;
        case FormulaId::AdjacentPow2:
            p.value = q_adjacent_pow2(in.n, in.m, in.inv_ipr);
            add("n", in.n);
            add("M", in.m);
            add("inv_ipr", in.inv_ipr);
            break;
        case FormulaId::Cosine:
            p.value = q_cosine(in.n, integral_m(in.m));
            add("n", in.n);
            add("M", in.m);
            break;
        case FormulaId::Lubkin:
            p.value = q_lubkin(dim_from(in.n));
            add("N", static_cast<double>(dim_from(in.n)));
            break;
    }
    return p;
}

namespace {

const std::vector<std::pair<std::string, FormulaId>>& formula_table() {
    static const std::vector<std::pair<std::string, FormulaId>> table = {
        {"random-subset", FormulaId::RandomSubset},
        {"cue-subset", FormulaId::CueSubset},
        {"equal-amp-subset", FormulaId::EqualAmpSubset},
        {"sym-halved", FormulaId::SymHalved},
        {"spin-sector", FormulaId::SpinSector},
        {"band-limit", FormulaId::BandLimit},
        {"adjacent-exact", FormulaId::AdjacentExact},
        {"adjacent-pow2", FormulaId::AdjacentPow2},
        {"cosine", FormulaId::Cosine},
        {"lubkin", FormulaId::Lubkin},
    };
    return table;
}

// Short aliases accepted on the command line.
const std::vector<std::pair<std::string, FormulaId>>& formula_aliases() {
    static const std::vector<std::pair<std::string, FormulaId>> aliases = {
        {"eq3", FormulaId::RandomSubset},   {"eq4", FormulaId::CueSubset},
        {"eq5", FormulaId::EqualAmpSubset}, {"eq7", FormulaId::AdjacentExact},
        {"eq8", FormulaId::AdjacentPow2},   {"eq10", FormulaId::Cosine},
    };
    return aliases;
}

}  // namespace

FormulaId parse_formula(const std::string& name) {
    for (const auto* table : {&formula_table(), &formula_aliases()}) {
        for (const auto& [key, id] : *table) {
            if (key == name) {
                return id;
            }
        }
    }
    throw DomainError("unknown formula '" + name + "'");
}

std::string formula_name(FormulaId id) {
    for (const auto& [key, fid] : formula_table()) {
        if (fid == id) {
            return key;
        }
    }
    return "unknown";
}

std::vector<std::string> formula_names() {
    std::vector<std::string> out;
    for (const auto& entry : formula_table()) {
        out.push_back(entry.first);
    }
    return out;
}

}  // namespace mwloc
