#include "plcut/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "plcut/errors.hpp"

namespace plcut {

namespace {

double entropy(std::span<const std::size_t> sizes, double n) {
    std::vector<double> terms;
    terms.reserve(sizes.size());
    for (auto s : sizes) {
        const double c = static_cast<double>(s);
        terms.push_back(-(c / n) * (std::log(c) - std::log(n)));
    }
    std::sort(terms.begin(), terms.end());
    double h = 0.0;
    for (double t : terms) h += t;
    return h;
}

} // namespace

double nmi(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw InvalidInput("nmi: partitions have different lengths");
    if (a.n() == 0) throw InvalidInput("nmi: empty partitions");
    const double n = static_cast<double>(a.n());

    std::map<std::pair<ClusterId, ClusterId>, std::size_t> joint;
    for (std::size_t i = 0; i < a.n(); ++i) ++joint[{a[i], b[i]}];

    // Summing sorted terms makes the result independent of argument order.
    std::vector<double> terms;
    terms.reserve(joint.size());
    for (const auto& [cell, count] : joint) {
        const double nij = static_cast<double>(count);
        const double ai = static_cast<double>(a.size_of(cell.first));
        const double bj = static_cast<double>(b.size_of(cell.second));
        terms.push_back((nij / n) * (std::log(n * nij) - std::log(ai * bj)));
    }
    std::sort(terms.begin(), terms.end());
    double mi = 0.0;
    for (double t : terms) mi += t;

    const double ha = entropy(a.sizes(), n);
    const double hb = entropy(b.sizes(), n);
    if (ha == 0.0 && hb == 0.0) return 1.0;
    if (ha == 0.0 || hb == 0.0) return 0.0;
    const double lo = std::min(ha, hb);
    const double hi = std::max(ha, hb);
    return std::clamp(mi / std::sqrt(lo * hi), 0.0, 1.0);
}

SizeHistogram size_histogram(const Partition& p) {
    SizeHistogram h;
    h.sizes.assign(p.sizes().begin(), p.sizes().end());
    std::sort(h.sizes.begin(), h.sizes.end(), std::greater<>());
    for (std::size_t r = 0; r < h.sizes.size(); ++r) h.rank_size.emplace_back(r + 1, h.sizes[r]);
    return h;
}

AuditReport audit_trace(const RunResult& result) {
    if (result.objective_trace.empty()) throw InvalidInput("audit: empty objective trace");
    std::vector<double> seq;
    seq.push_back(result.objective_trace[0]);
    for (std::size_t t = 1; t < result.objective_trace.size(); ++t) {
        if (t - 1 < result.assignment_trace.size()) seq.push_back(result.assignment_trace[t - 1]);
        seq.push_back(result.objective_trace[t]);
    }
    AuditReport r;
    for (std::size_t t = 1; t < seq.size(); ++t) {
        const double rise = seq[t] - seq[t - 1];
        if (rise > kMonotoneSlack * std::max(1.0, std::abs(seq[t - 1]))) {
            if (!r.monotonicity_violation) r.first_violation = t;
            r.monotonicity_violation = true;
        }
        r.max_increase = std::max(r.max_increase, rise);
    }
    r.recomputed_final = result.final_objective();
    r.discrepancy = result.max_discrepancy;
    return r;
}

AuditReport audit_objective(const RunResult& result, const Geometry& geom, const PYParams& params) {
    AuditReport r = audit_trace(result);
    if (result.partition.n() != geom.size()) throw InvalidInput("audit: partition does not match the data");
    r.recomputed_final = regularized_objective(geom, result.partition, params);
    r.discrepancy = std::max(r.discrepancy, std::abs(r.recomputed_final - result.final_objective()));
    return r;
}

} // namespace plcut
