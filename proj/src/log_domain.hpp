#pragma once

#include <cmath>
#include <limits>

#include "curl/kernels.hpp"
#include "curl/types.hpp"

// Log-domain policy iteration for long multiplicative-update loops. A policy
// entry that is disfavored at every iteration decays exponentially in k and
// underflows probability space after a few hundred steps; carrying log(pi)
// keeps the backward recursion exact for any run length.
namespace curl::detail {

inline StepTable to_log_policy(const Policy& policy) {
    StepTable log_pi(policy.shape());
    auto src = policy.data();
    auto dst = log_pi.data();
    for (Index i = 0; i < src.size(); ++i)
        dst[i] = src[i] > 0.0 ? std::log(src[i]) : -std::numeric_limits<double>::infinity();
    return log_pi;
}

/// exp of each row, normalized once. Entries below the exp underflow
/// threshold come out as zeros; their true mass is < 1e-300.
inline Policy materialize_policy(const StepTable& log_pi) {
    const MdpShape& shape = log_pi.shape();
    Policy pi(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x) {
            auto src = log_pi.row(n, x);
            auto dst = pi.row(n, x);
            double total = 0.0;
            for (Index a = 0; a < shape.num_actions; ++a) {
                dst[a] = std::exp(src[a]);
                total += dst[a];
            }
            const double inv = 1.0 / total;
            for (Index a = 0; a < shape.num_actions; ++a) dst[a] *= inv;
        }
    return pi;
}

/// The regularized backward recursion with the reference policy given in log
/// space; identical arithmetic to the probability-space operation.
inline QTilde q_backup_log(const GradientField& grad, const TransitionKernel& kernel,
                           const StepTable& log_prev, double tau) {
    const MdpShape& shape = grad.shape();
    const Index N = shape.horizon;
    QTilde q(shape);
    for (Index x = 0; x < shape.num_states; ++x)
        for (Index a = 0; a < shape.num_actions; ++a) q.at(N, x, a) = -grad.at(N, x, a);

    std::vector<double> soft_value(shape.num_states);
    for (Index n = N - 1; n >= 1; --n) {
        for (Index xp = 0; xp < shape.num_states; ++xp) {
            auto lp = log_prev.row(n + 1, xp);
            auto q_row = q.row(n + 1, xp);
            double shift = -std::numeric_limits<double>::infinity();
            for (Index a = 0; a < shape.num_actions; ++a)
                shift = std::max(shift, lp[a] + tau * q_row[a]);
            double acc = 0.0;
            for (Index a = 0; a < shape.num_actions; ++a)
                acc += std::exp(lp[a] + tau * q_row[a] - shift);
            soft_value[xp] = (shift + std::log(acc)) / tau;
        }
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a)
                q.at(n, x, a) = -grad.at(n, x, a) + kernels::dot(kernel.row(n + 1, x, a), soft_value);
    }
    return q;
}

/// log pi' = log pi + tau q - logsumexp(log pi + tau q) per row.
inline StepTable twist_log(const StepTable& log_prev, const QTilde& q, double tau) {
    const MdpShape& shape = log_prev.shape();
    StepTable out(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x) {
            auto lp = log_prev.row(n, x);
            auto q_row = q.row(n, x);
            auto dst = out.row(n, x);
            double shift = -std::numeric_limits<double>::infinity();
            for (Index a = 0; a < shape.num_actions; ++a) {
                dst[a] = lp[a] + tau * q_row[a];
                shift = std::max(shift, dst[a]);
            }
            double acc = 0.0;
            for (Index a = 0; a < shape.num_actions; ++a) acc += std::exp(dst[a] - shift);
            const double log_norm = shift + std::log(acc);
            for (Index a = 0; a < shape.num_actions; ++a) dst[a] -= log_norm;
        }
    return out;
}

} // namespace curl::detail
