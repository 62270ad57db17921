#include "curl/solver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "curl/flow.hpp"
#include "curl/kernels.hpp"
#include "log_domain.hpp"

namespace curl {

void SolverConfig::validate() const {
    if (iterations < 1) throw ParameterError("SolverConfig: iterations must be >= 1");
    if (learning_rate && !(*learning_rate > 0.0))
        throw ParameterError("SolverConfig: learning rate must be > 0");
    if (initial_policy) {
        initial_policy->validate();
        if (!(initial_policy->min_entry() > 0.0))
            throw ParameterError("SolverConfig: initial policy must be strictly positive");
    }
}

double default_learning_rate(const MdpShape& shape, Index iterations, double big_l) {
    if (iterations < 1) throw ParameterError("default_learning_rate: K must be >= 1");
    if (!(big_l > 0.0)) throw ParameterError("default_learning_rate: L must be > 0");
    const double n = static_cast<double>(shape.horizon);
    const double log_a = std::log(static_cast<double>(shape.num_actions));
    return std::sqrt(2.0 * n * log_a / static_cast<double>(iterations)) / big_l;
}

QTilde regularized_q_backup(const GradientField& grad, const TransitionKernel& kernel,
                            const Policy& prev_policy, double tau) {
    const MdpShape& shape = grad.shape();
    detail::check_same_shape(shape, kernel.shape(), "regularized_q_backup");
    detail::check_same_shape(shape, prev_policy.shape(), "regularized_q_backup");
    if (!(tau > 0.0)) throw ParameterError("regularized_q_backup: tau must be > 0");
    if (!(prev_policy.min_entry() > 0.0))
        throw DomainError("regularized_q_backup: previous policy has a zero entry");
    return detail::q_backup_log(grad, kernel, detail::to_log_policy(prev_policy), tau);
}

Policy exponential_twist_update(const Policy& prev_policy, const QTilde& q, double tau) {
    const MdpShape& shape = prev_policy.shape();
    detail::check_same_shape(shape, q.shape(), "exponential_twist_update");
    if (tau < 0.0) throw ParameterError("exponential_twist_update: tau must be >= 0");

    Policy out(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x) {
            auto prev = prev_policy.row(n, x);
            auto q_row = q.row(n, x);
            auto dst = out.row(n, x);
            // Shift by the row maximum over supported actions so the argmax
            // weight survives exactly; exp factors stay in (0,1].
            double shift = -std::numeric_limits<double>::infinity();
            for (Index a = 0; a < shape.num_actions; ++a)
                if (prev[a] > 0.0 && tau * q_row[a] > shift) shift = tau * q_row[a];
            double total = 0.0;
            for (Index a = 0; a < shape.num_actions; ++a) {
                const double w = prev[a] > 0.0 ? prev[a] * std::exp(tau * q_row[a] - shift) : 0.0;
                dst[a] = w;
                total += w;
            }
            const double inv = 1.0 / total;
            for (Index a = 0; a < shape.num_actions; ++a) dst[a] *= inv;
        }
    return out;
}

SolveReport md_curl_solve(const CurlObjective& objective, const TransitionKernel& kernel,
                          const InitialDistribution& mu0, const SolverConfig& config) {
    config.validate();
    const MdpShape& shape = kernel.shape();

    Policy policy = config.initial_policy ? *config.initial_policy : Policy::uniform(shape);
    detail::check_same_shape(shape, policy.shape(), "md_curl_solve");

    const double big_l = lipschitz_big_l(objective, shape);
    const double constant_rate =
        config.learning_rate ? *config.learning_rate
                             : default_learning_rate(shape, config.iterations, big_l);
    auto rate_at = [&](Index k) {
        return config.rate_schedule ? config.rate_schedule(k) : constant_rate;
    };

    SolveReport report{
        /*objective_values=*/{},
        /*best_iteration=*/0,
        /*best_value=*/0.0,
        /*final_policy=*/policy,
        /*best_policy=*/policy,
        /*best_occupancy=*/OccupancyMeasure(shape),
        /*learning_rate_used=*/rate_at(0),
        /*forward_passes=*/0,
        /*backward_passes=*/0,
    };
    report.objective_values.reserve(config.iterations + 1);

    bool have_best = false;
    auto record = [&](const OccupancyMeasure& mu, const Policy& pi, Index k) {
        const double v = objective.value(mu);
        report.objective_values.push_back(v);
        if (!have_best || v < report.best_value) {
            have_best = true;
            report.best_value = v;
            report.best_iteration = k;
            report.best_policy = pi;
            report.best_occupancy = mu;
        }
    };

    // The policy iterate lives in log space: consistently disfavored actions
    // decay exponentially in k and would underflow probability space within a
    // few hundred iterations.
    StepTable log_policy = detail::to_log_policy(policy);
    for (Index k = 0; k < config.iterations; ++k) {
        policy = detail::materialize_policy(log_policy);
        OccupancyMeasure mu = occupancy_from_policy(policy, kernel, mu0);
        ++report.forward_passes;
        record(mu, policy, k);
        const GradientField grad = objective.gradient(mu);
        const double tau = rate_at(k);
        const QTilde q = detail::q_backup_log(grad, kernel, log_policy, tau);
        ++report.backward_passes;
        log_policy = detail::twist_log(log_policy, q, tau);
    }
    policy = detail::materialize_policy(log_policy);
    OccupancyMeasure mu = occupancy_from_policy(policy, kernel, mu0);
    ++report.forward_passes;
    record(mu, policy, config.iterations);
    report.final_policy = std::move(policy);
    return report;
}

} // namespace curl
