#include "plcut/graphcuts.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "plcut/errors.hpp"

namespace plcut {

std::string_view to_string(CutKind kind) {
    switch (kind) {
    case CutKind::kNormalizedCut: return "ncut";
    case CutKind::kRatioCut: return "rcut";
    case CutKind::kRatioAssociation: return "rassoc";
    }
    return "unknown";
}

CutKind parse_cut_kind(std::string_view name) {
    if (name == "ncut") return CutKind::kNormalizedCut;
    if (name == "rcut") return CutKind::kRatioCut;
    if (name == "rassoc") return CutKind::kRatioAssociation;
    throw InvalidInput("unknown cut objective '" + std::string(name) + "' (expected ncut, rcut or rassoc)");
}

double cut(const WeightedGraph& g, std::span<const std::size_t> s, std::span<const std::size_t> t) {
    std::vector<char> in_t(g.size(), 0);
    for (auto j : t) {
        if (j >= g.size()) throw InvalidInput("node out of range");
        in_t[j] = 1;
    }
    double total = 0.0;
    for (auto i : s) {
        if (i >= g.size()) throw InvalidInput("node out of range");
        const auto cols = g.neighbors(i);
        const auto vals = g.neighbor_weights(i);
        for (std::size_t e = 0; e < cols.size(); ++e)
            if (in_t[cols[e]]) total += vals[e];
    }
    return total;
}

double degree(const WeightedGraph& g, std::span<const std::size_t> s) {
    double total = 0.0;
    for (auto i : s) {
        if (i >= g.size()) throw InvalidInput("node out of range");
        total += g.degree(i);
    }
    return total;
}

double cut_objective(const WeightedGraph& g, const Partition& p, CutKind kind) {
    if (p.n() != g.size()) throw InvalidInput("partition size does not match graph");
    std::vector<double> within(p.k(), 0.0);
    std::vector<double> leaving(p.k(), 0.0);
    std::vector<double> deg(p.k(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const ClusterId c = p[i];
        deg[c] += g.degree(i);
        const auto cols = g.neighbors(i);
        const auto vals = g.neighbor_weights(i);
        for (std::size_t e = 0; e < cols.size(); ++e)
            (p[cols[e]] == c ? within : leaving)[c] += vals[e];
    }
    double total = 0.0;
    for (std::size_t c = 0; c < p.k(); ++c) {
        const double size = static_cast<double>(p.size_of(static_cast<ClusterId>(c)));
        switch (kind) {
        case CutKind::kNormalizedCut:
            if (!(deg[c] > 0.0))
                throw DegenerateCluster("cluster " + std::to_string(c) + " has zero degree");
            total += leaving[c] / deg[c];
            break;
        case CutKind::kRatioCut: total += leaving[c] / size; break;
        case CutKind::kRatioAssociation: total += within[c] / size; break;
        }
    }
    return total;
}

namespace {

void require_positive_degrees(const WeightedGraph& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!(g.degree(i) > 0.0))
            throw InvalidInput("node " + std::to_string(i) +
                               " has zero degree; normalized cut needs positive degrees "
                               "(add self-loops or remove isolated nodes)");
}

// The matrix whose smallest eigenvalue decides the shift: rho must reach -lambda_min.
Eigen::MatrixXd shift_matrix(const WeightedGraph& g, CutKind kind) {
    Eigen::MatrixXd m = g.adjacency().to_dense();
    switch (kind) {
    case CutKind::kNormalizedCut: {
        Eigen::VectorXd inv_sqrt(m.rows());
        for (Eigen::Index i = 0; i < m.rows(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(g.degree(i));
        return inv_sqrt.asDiagonal() * m * inv_sqrt.asDiagonal();
    }
    case CutKind::kRatioAssociation: return m;
    case CutKind::kRatioCut:
        // rho I - L is PSD iff rho >= lambda_max(L), i.e. rho >= -lambda_min(-L).
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) -= g.degree(i);
        return m;
    }
    return m;
}

double shift_bound(const WeightedGraph& g, CutKind kind) {
    double bound = 0.0;
    switch (kind) {
    case CutKind::kNormalizedCut: return 1.0;
    case CutKind::kRatioAssociation:
        for (std::size_t i = 0; i < g.size(); ++i) bound = std::max(bound, g.degree(i));
        return bound;
    case CutKind::kRatioCut:
        for (std::size_t i = 0; i < g.size(); ++i) bound = std::max(bound, 2.0 * (g.degree(i) - g.weight(i, i)));
        return bound;
    }
    return bound;
}

} // namespace

double psd_shift(const WeightedGraph& g, CutKind kind, ShiftEstimate mode) {
    if (g.size() == 0) throw InvalidInput("empty graph");
    if (kind == CutKind::kNormalizedCut) require_positive_degrees(g);
    if (mode == ShiftEstimate::kBound || (mode == ShiftEstimate::kAuto && g.size() > kExactShiftLimit))
        return shift_bound(g, kind);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(shift_matrix(g, kind), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DomainError("eigensolver failed while estimating the PSD shift");
    return std::max(0.0, -solver.eigenvalues().minCoeff());
}

KernelProblem build_kernel(const WeightedGraph& g, CutKind kind, std::optional<double> rho) {
    if (g.size() == 0) throw InvalidInput("empty graph");
    if (kind == CutKind::kNormalizedCut) require_positive_degrees(g);
    const double shift = rho ? *rho : psd_shift(g, kind);
    if (!std::isfinite(shift)) throw InvalidInput("rho must be finite");

    const std::size_t n = g.size();
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(g.adjacency().nnz() + n);
    vals.reserve(g.adjacency().nnz() + n);

    auto diagonal_term = [&](std::size_t i) {
        switch (kind) {
        case CutKind::kNormalizedCut: return shift / g.degree(i);
        case CutKind::kRatioAssociation: return shift;
        case CutKind::kRatioCut: return shift - g.degree(i);
        }
        return 0.0;
    };
    auto scale = [&](std::size_t i, std::size_t j, double a) {
        return kind == CutKind::kNormalizedCut ? a / (g.degree(i) * g.degree(j)) : a;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = g.neighbors(i);
        const auto wt = g.neighbor_weights(i);
        bool diag_done = false;
        for (std::size_t e = 0; e < nb.size(); ++e) {
            if (!diag_done && nb[e] >= i) {
                const double extra = nb[e] == i ? scale(i, i, wt[e]) : 0.0;
                cols.push_back(static_cast<std::uint32_t>(i));
                vals.push_back(diagonal_term(i) + extra);
                diag_done = true;
                if (nb[e] == i) continue;
            }
            cols.push_back(nb[e]);
            vals.push_back(scale(i, nb[e], wt[e]));
        }
        if (!diag_done) {
            cols.push_back(static_cast<std::uint32_t>(i));
            vals.push_back(diagonal_term(i));
        }
        row_ptr[i + 1] = cols.size();
    }

    KernelProblem kp;
    kp.kernel = CsrMatrix(n, std::move(row_ptr), std::move(cols), std::move(vals));
    kp.rho = shift;
    if (kind == CutKind::kNormalizedCut)
        kp.weights.assign(g.degrees().begin(), g.degrees().end());
    else
        kp.weights.assign(n, 1.0);
    return kp;
}

GraphRunResult power_law_cut(const WeightedGraph& g, CutKind kind, const SolverConfig& config,
                             std::optional<double> rho) {
    const KernelProblem kp = build_kernel(g, kind, rho);
    KernelGeometry geom(kp);
    GraphRunResult out;
    out.kind = kind;
    out.rho = kp.rho;
    out.run = run(geom, config, [&g, kind](const Partition& p) { return cut_objective(g, p, kind); });
    return out;
}

} // namespace plcut
