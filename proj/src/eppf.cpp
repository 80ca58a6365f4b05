#include "plcut/eppf.hpp"

#include <cmath>
#include <string>

#include "plcut/errors.hpp"

namespace plcut {

double log_rising_factorial(double x, std::size_t m, double a) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double factor = x + static_cast<double>(j) * a;
        if (!(factor > 0.0))
            throw DomainError("rising factorial factor " + std::to_string(j) + " is nonpositive (" +
                              std::to_string(factor) + ")");
        s += std::log(factor);
    }
    return s;
}

double log_eppf(std::span<const std::size_t> sizes, const PYParams& params) {
    std::size_t n = 0;
    double log_prod = 0.0;
    for (std::size_t s : sizes) {
        if (s == 0) throw InvalidInput("empty cluster in size list");
        n += s;
        log_prod += log_rising_factorial(1.0 - params.theta, s - 1, 1.0);
    }
    if (sizes.empty()) throw InvalidInput("size list is empty");
    const double log_num = log_rising_factorial(params.alpha + params.theta, sizes.size() - 1, params.theta);
    const double log_den = log_rising_factorial(params.alpha + 1.0, n - 1, 1.0);
    return log_num - log_den + log_prod;
}

double log_eppf(const Partition& p, const PYParams& params) {
    return log_eppf(p.sizes(), params);
}

std::optional<double> move_delta(const PYParams& params, std::size_t source_size,
                                 std::size_t target_size, std::size_t k) {
    const double th = params.theta;
    const double kk = static_cast<double>(k);
    // Leaving the source: a singleton removes one table (numerator factor
    // alpha + (k-1) theta); otherwise the source loses factor (n_c - 1 - theta).
    const bool singleton = source_size == 1;
    const double leave = singleton ? params.alpha + (kk - 1.0) * th
                                   : static_cast<double>(source_size) - 1.0 - th;
    if (target_size == kNewClusterSize) {
        if (singleton) return std::nullopt;
        return std::log(leave / (params.alpha + kk * th));
    }
    return std::log(leave / (static_cast<double>(target_size) - th));
}

EppfState::EppfState(const PYParams& params, const Partition& p) : params_(params) {
    resync(p);
}

void EppfState::resync(const Partition& p) {
    n_ = p.n();
    k_ = p.k();
    log_num_ = log_rising_factorial(params_.alpha + params_.theta, k_ - 1, params_.theta);
    log_den_ = log_rising_factorial(params_.alpha + 1.0, n_ - 1, 1.0);
    log_prod_ = 0.0;
    for (std::size_t s : p.sizes()) log_prod_ += log_rising_factorial(1.0 - params_.theta, s - 1, 1.0);
    moves_since_resync_ = 0;
}

void EppfState::apply_move(std::size_t source_size, std::size_t target_size, const Partition& after) {
    const double th = params_.theta;
    if (source_size == 1) {
        // Table closes; last numerator factor alpha + theta + (k-2) theta goes away.
        log_num_ -= std::log(params_.alpha + (static_cast<double>(k_) - 1.0) * th);
        --k_;
    } else {
        log_prod_ -= std::log(static_cast<double>(source_size) - 1.0 - th);
    }
    if (target_size == kNewClusterSize) {
        log_num_ += std::log(params_.alpha + static_cast<double>(k_) * th);
        ++k_;
    } else {
        log_prod_ += std::log(static_cast<double>(target_size) - th);
    }
    if (++moves_since_resync_ >= kResyncInterval) resync(after);
}

} // namespace plcut
