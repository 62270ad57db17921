#include "curl/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curl/kernels.hpp"

namespace curl {

namespace detail {

void check_same_shape(const MdpShape& a, const MdpShape& b, const char* what) {
    if (!(a == b))
        throw DimensionError(std::string(what) + ": shape mismatch");
}

void check_probabilities(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0 + 1e-12) || std::isnan(v))
            throw ParameterError(std::string(what) + ": entry outside [0,1]: " +
                                 std::to_string(v));
    }
}

void check_rows_sum_to_one(const std::vector<double>& values, Index row_len, double tol,
                           const char* what) {
    for (Index start = 0; start < values.size(); start += row_len) {
        const double s = kernels::sum({values.data() + start, row_len});
        if (std::fabs(s - 1.0) > tol)
            throw ParameterError(std::string(what) + ": row " +
                                 std::to_string(start / row_len) + " sums to " +
                                 std::to_string(s));
    }
}

} // namespace detail

void TransitionKernel::validate(double tol) const {
    detail::check_probabilities(probs_, "TransitionKernel");
    detail::check_rows_sum_to_one(probs_, shape_.num_states, tol, "TransitionKernel");
}

Policy Policy::uniform(MdpShape shape) {
    Policy pi(shape);
    const double p = 1.0 / static_cast<double>(shape.num_actions);
    std::fill(pi.probs_.begin(), pi.probs_.end(), p);
    return pi;
}

double Policy::min_entry() const {
    return *std::min_element(probs_.begin(), probs_.end());
}

void Policy::validate(double tol) const {
    detail::check_probabilities(probs_, "Policy");
    detail::check_rows_sum_to_one(probs_, shape_.num_actions, tol, "Policy");
}

double OccupancyMeasure::state_marginal(Index n, Index x) const {
    return kernels::sum(row(n, x));
}

void OccupancyMeasure::validate(double tol) const {
    detail::check_probabilities(probs_, "OccupancyMeasure");
    const Index slice_len = shape_.num_states * shape_.num_actions;
    for (Index n = 0; n <= shape_.horizon; ++n) {
        const double s = kernels::sum(slice(n));
        if (std::fabs(s - 1.0) > tol)
            throw ParameterError("OccupancyMeasure: slice " + std::to_string(n) +
                                 " sums to " + std::to_string(s));
    }
    (void)slice_len;
}

InitialDistribution InitialDistribution::dirac(Index num_states, Index num_actions, Index x,
                                               Index a) {
    InitialDistribution mu0(num_states, num_actions);
    if (x >= num_states || a >= num_actions)
        throw ParameterError("InitialDistribution::dirac: index out of range");
    mu0.at(x, a) = 1.0;
    return mu0;
}

InitialDistribution InitialDistribution::uniform(Index num_states, Index num_actions) {
    InitialDistribution mu0(num_states, num_actions);
    const double p = 1.0 / static_cast<double>(num_states * num_actions);
    std::fill(mu0.probs_.begin(), mu0.probs_.end(), p);
    return mu0;
}

void InitialDistribution::validate(double tol) const {
    detail::check_probabilities(probs_, "InitialDistribution");
    const double s = kernels::sum(probs_);
    if (std::fabs(s - 1.0) > tol)
        throw ParameterError("InitialDistribution: sums to " + std::to_string(s));
}

void StepTable::check_finite(const char* what) const {
    for (double v : values_)
        if (!std::isfinite(v))
            throw DomainError(std::string(what) + ": non-finite entry");
}

} // namespace curl
