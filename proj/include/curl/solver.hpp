#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "curl/objectives.hpp"
#include "curl/types.hpp"

namespace curl {

struct SolverConfig {
    /// Number of mirror-descent iterations K.
    Index iterations{};
    /// Fixed learning rate; when absent the constant rate
    /// default_learning_rate(shape, K, L) is used.
    std::optional<double> learning_rate{};
    /// Starting policy; must be strictly positive. Defaults to uniform.
    std::optional<Policy> initial_policy{};
    /// Optional per-iteration rate hook; overrides the constant rate when set.
    std::function<double(Index)> rate_schedule{};

    void validate() const;
};

struct SolveReport {
    /// F(mu^{pi^k}) for k = 0..K (both endpoints included).
    std::vector<double> objective_values;
    /// argmin over recorded values, smallest index on ties.
    Index best_iteration{};
    double best_value{};
    Policy final_policy;
    Policy best_policy;
    OccupancyMeasure best_occupancy;
    /// Constant rate in effect (first rate when a schedule is set).
    double learning_rate_used{};
    /// Structural counters: one forward flow per recorded value, one backward
    /// recursion per iteration. No projection loop exists.
    Index forward_passes{};
    Index backward_passes{};
};

/// The constant rate of the 1/sqrt(K) convergence guarantee with the distance
/// term replaced by its N log|A| upper bound (valid from a uniform start):
/// (1/L) * sqrt(2 N log|A| / K).
double default_learning_rate(const MdpShape& shape, Index iterations, double big_l);

/// Backward recursion for the regularized state-action values:
///   Q_N(x,a)  = -grad_N(x,a)
///   Q_n(x,a)  = -grad_n(x,a)
///               + sum_{x'} p_{n+1}(x'|x,a) * (1/tau) * log sum_{a'}
///                     prev_policy_{n+1}(a'|x') exp(tau * Q_{n+1}(x',a')),
/// the inner maximum over the next-step policy evaluated in closed form.
/// Log-sum-exps are shifted by their row maximum before exponentiating.
QTilde regularized_q_backup(const GradientField& grad, const TransitionKernel& kernel,
                            const Policy& prev_policy, double tau);

/// Multiplicative softmax step
///   out_n(a|x) = prev_n(a|x) exp(tau Q_n(x,a)) / normalizer(n,x).
/// Exact for tau = 0 or constant Q rows; strictly positive wherever prev is.
Policy exponential_twist_update(const Policy& prev_policy, const QTilde& q, double tau);

/// Offline mirror-descent solve: K iterations of forward flow, gradient,
/// regularized backup and exponential twist, recording the objective at every
/// iterate including the final one.
SolveReport md_curl_solve(const CurlObjective& objective, const TransitionKernel& kernel,
                          const InitialDistribution& mu0, const SolverConfig& config);

} // namespace curl
