#include "mwloc/measures.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mwloc/errors.h"

namespace mwloc {

namespace {

struct Moments {
    double sum2 = 0;  // sum |psi|^2
    double sum4 = 0;  // sum |psi|^4
};

Moments moments(const Statevector& psi) {
    Moments m;
    for (const auto& a : psi.amplitudes()) {
        double p = std::norm(a);
        m.sum2 += p;
        m.sum4 += p * p;
    }
    if (!(m.sum4 > 0)) {
        throw DomainError("IPR undefined for the zero vector");
    }
    return m;
}

double q_gram(const Statevector& psi) {
    double s = 0;
    for (unsigned r = 0; r < psi.n_qubits(); r++) {
        s += gram_determinant(partition_scalars(psi, r));
    }
    return 4.0 * s / psi.n_qubits();
}

double purity_from(const PartitionScalars& s) {
    return s.uu * s.uu + s.vv * s.vv + 2.0 * std::norm(s.uv);
}

double q_purity(const Statevector& psi) {
    double s = 0;
    for (unsigned r = 0; r < psi.n_qubits(); r++) {
        s += purity_from(partition_scalars(psi, r));
    }
    return 2.0 * (1.0 - s / psi.n_qubits());
}

}  // namespace

double ipr(const Statevector& psi) {
    Moments m = moments(psi);
    return m.sum2 * m.sum2 / m.sum4;
}

double inv_ipr(const Statevector& psi) {
    Moments m = moments(psi);
    return m.sum4 / (m.sum2 * m.sum2);
}

double qubit_purity(const Statevector& psi, unsigned r) {
    return purity_from(partition_scalars(psi, r));
}

double meyer_wallach_q(const Statevector& psi, QRoute route) {
    switch (route) {
        case QRoute::Gram:
            return q_gram(psi);
        case QRoute::Purity:
            return q_purity(psi);
        case QRoute::Checked: {
            double g = q_gram(psi);
            double p = q_purity(psi);
            if (std::abs(g - p) > kRouteTolerance) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "Meyer-Wallach routes disagree: gram=" << g << " purity=" << p;
                throw NumericError(msg.str());
            }
            return g;
        }
    }
    return q_gram(psi);
}

Correlators correlators(const Statevector& psi) {
    std::size_t half = psi.dim() / 2;
    if (half < 2) {
        throw DomainError("correlators need N/2 >= 2 (n >= 2)");
    }
    double ordered_pairs = static_cast<double>(half) * static_cast<double>(half - 1);
    std::size_t n = psi.n_qubits();
    Correlators c;
    for (unsigned r = 0; r < n; r++) {
        std::size_t bit = std::size_t{1} << r;
        double su = 0, su2 = 0, sv = 0, sv2 = 0;
        for (std::size_t j = 0; j < half; j++) {
            std::size_t i = insert_zero_bit(j, r);
            double a = std::norm(psi[i]);
            double b = std::norm(psi[i | bit]);
            su += a;
            su2 += a * a;
            sv += b;
            sv2 += b * b;
        }
        // sum over ordered i != j of a_i a_j = (sum a)^2 - sum a^2
        double internal = (su * su - su2) + (sv * sv - sv2);
        c.cxx += internal / (2.0 * ordered_pairs);
        c.cxy += su * sv / (static_cast<double>(half) * static_cast<double>(half));
    }
    c.cxx /= static_cast<double>(n);
    c.cxy /= static_cast<double>(n);
    return c;
}

Correlators correlators_on_support(const Statevector& psi, std::span<const std::uint64_t> support) {
    std::vector<char> member(psi.dim(), 0);
    for (auto idx : support) {
        if (idx >= psi.dim()) {
            throw DomainError("support index out of range");
        }
        member[idx] = 1;
    }
    std::size_t n = psi.n_qubits();
    Correlators c;
    for (unsigned r = 0; r < n; r++) {
        std::size_t bit = std::size_t{1} << r;
        double su = 0, su2 = 0, sv = 0, sv2 = 0;
        double cu = 0, cv = 0;
        for (auto idx : support) {
            double p = std::norm(psi[idx]);
            if (idx & bit) {
                sv += p;
                sv2 += p * p;
                cv += 1;
            } else {
                su += p;
                su2 += p * p;
                cu += 1;
            }
        }
        double internal_pairs = cu * (cu - 1) + cv * (cv - 1);
        if (internal_pairs <= 0 || cu * cv <= 0) {
            throw DomainError("support too small for correlators on qubit " + std::to_string(r));
        }
        c.cxx += ((su * su - su2) + (sv * sv - sv2)) / internal_pairs;
        c.cxy += su * sv / (cu * cv);
    }
    c.cxx /= static_cast<double>(n);
    c.cxy /= static_cast<double>(n);
    return c;
}

double normalization_identity(const Statevector& psi, const Correlators& c) {
    double big_n = static_cast<double>(psi.dim());
    return inv_ipr(psi) + big_n * (big_n / 2 - 1) * c.cxx + big_n * big_n / 2 * c.cxy;
}

MeasureReport measure(const Statevector& psi, QRoute route) {
    MeasureReport rep;
    Moments m = moments(psi);
    rep.ipr = m.sum2 * m.sum2 / m.sum4;
    rep.inv_ipr = m.sum4 / (m.sum2 * m.sum2);
    rep.purities.resize(psi.n_qubits());
    double gram_sum = 0;
    for (unsigned r = 0; r < psi.n_qubits(); r++) {
        PartitionScalars s = partition_scalars(psi, r);
        rep.purities[r] = purity_from(s);
        gram_sum += gram_determinant(s);
    }
    double q_g = 4.0 * gram_sum / psi.n_qubits();
    double mean_purity =
        std::accumulate(rep.purities.begin(), rep.purities.end(), 0.0) / psi.n_qubits();
    double q_p = 2.0 * (1.0 - mean_purity);
    if (route == QRoute::Checked && std::abs(q_g - q_p) > kRouteTolerance) {
        throw NumericError("Meyer-Wallach routes disagree");
    }
    rep.q = route == QRoute::Purity ? q_p : q_g;
    if (psi.dim() >= 4) {
        Correlators c = correlators(psi);
        rep.cxx = c.cxx;
        rep.cxy = c.cxy;
    }
    return rep;
}

}  // namespace mwloc
