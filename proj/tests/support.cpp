#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace curl::testing {

namespace {

void fill_random_simplex(std::span<double> row, SplitMix64& rng) {
    double total = 0.0;
    for (double& v : row) {
        v = -std::log(1.0 - rng.next_double()) + 1e-3;
        total += v;
    }
    for (double& v : row) v /= total;
}

} // namespace

TransitionKernel random_kernel(const MdpShape& shape, SplitMix64& rng) {
    TransitionKernel kernel(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a)
                fill_random_simplex(kernel.row(n, x, a), rng);
    return kernel;
}

Policy random_policy(const MdpShape& shape, SplitMix64& rng) {
    Policy pi(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x) fill_random_simplex(pi.row(n, x), rng);
    return pi;
}

InitialDistribution random_initial(const MdpShape& shape, SplitMix64& rng) {
    InitialDistribution mu0(shape.num_states, shape.num_actions);
    std::vector<double> row(shape.num_states * shape.num_actions);
    fill_random_simplex(row, rng);
    for (Index x = 0; x < shape.num_states; ++x)
        for (Index a = 0; a < shape.num_actions; ++a)
            mu0.at(x, a) = row[x * shape.num_actions + a];
    return mu0;
}

OccupancyMeasure random_occupancy(const MdpShape& shape, SplitMix64& rng) {
    OccupancyMeasure mu(shape);
    for (Index n = 0; n <= shape.horizon; ++n) fill_random_simplex(mu.slice(n), rng);
    return mu;
}

OccupancyMeasure occupancy_by_enumeration(const Policy& policy, const TransitionKernel& kernel,
                                          const InitialDistribution& mu0) {
    const MdpShape& shape = policy.shape();
    const Index cells = shape.num_states * shape.num_actions;
    OccupancyMeasure mu(shape);

    // Depth-first walk over all trajectories, pushing path probability into
    // every visited slice.
    struct Frame {
        Index cell;
        double prob;
    };
    std::vector<Frame> stack;
    std::vector<Index> path(shape.horizon + 1);

    std::function<void(Index, Index, double)> walk = [&](Index n, Index cell, double prob) {
        if (prob == 0.0) return;
        const Index x = cell / shape.num_actions;
        const Index a = cell % shape.num_actions;
        mu.at(n, x, a) += prob;
        if (n == shape.horizon) return;
        for (Index next = 0; next < cells; ++next) {
            const Index xp = next / shape.num_actions;
            const Index ap = next % shape.num_actions;
            walk(n + 1, next, prob * kernel.at(n + 1, x, a, xp) * policy.at(n + 1, xp, ap));
        }
    };
    for (Index cell = 0; cell < cells; ++cell)
        walk(0, cell, mu0.at(cell / shape.num_actions, cell % shape.num_actions));
    return mu;
}

std::vector<double> joint_trajectory_distribution(const Policy& policy,
                                                  const TransitionKernel& kernel,
                                                  const InitialDistribution& mu0) {
    const MdpShape& shape = policy.shape();
    const Index cells = shape.num_states * shape.num_actions;
    Index total = 1;
    for (Index n = 0; n <= shape.horizon; ++n) total *= cells;

    std::vector<double> joint(total, 0.0);
    std::vector<Index> path(shape.horizon + 1, 0);
    for (Index flat = 0; flat < total; ++flat) {
        Index rest = flat;
        for (Index n = shape.horizon + 1; n-- > 0;) {
            path[n] = rest % cells;
            rest /= cells;
        }
        double prob = mu0.at(path[0] / shape.num_actions, path[0] % shape.num_actions);
        for (Index n = 1; n <= shape.horizon && prob > 0.0; ++n) {
            const Index x = path[n - 1] / shape.num_actions;
            const Index a = path[n - 1] % shape.num_actions;
            const Index xp = path[n] / shape.num_actions;
            const Index ap = path[n] % shape.num_actions;
            prob *= kernel.at(n, x, a, xp) * policy.at(n, xp, ap);
        }
        joint[flat] = prob;
    }
    return joint;
}

Policy backward_induction_policy(const StepTable& cost, const TransitionKernel& kernel) {
    const MdpShape& shape = cost.shape();
    const Index N = shape.horizon;
    StepTable w(shape);
    std::vector<double> next_state_value(shape.num_states, 0.0);

    for (Index n = N; n >= 1; --n) {
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a) {
                double v = cost.at(n, x, a);
                if (n < N)
                    for (Index xp = 0; xp < shape.num_states; ++xp)
                        v += kernel.at(n + 1, x, a, xp) * next_state_value[xp];
                w.at(n, x, a) = v;
            }
        for (Index x = 0; x < shape.num_states; ++x) {
            double best = w.at(n, x, 0);
            for (Index a = 1; a < shape.num_actions; ++a) best = std::min(best, w.at(n, x, a));
            next_state_value[x] = best;
        }
    }

    Policy pi(shape);
    for (Index n = 1; n <= N; ++n)
        for (Index x = 0; x < shape.num_states; ++x) {
            Index best = 0;
            for (Index a = 1; a < shape.num_actions; ++a)
                if (w.at(n, x, a) < w.at(n, x, best)) best = a;
            pi.at(n, x, best) = 1.0;
        }
    return pi;
}

FrankWolfeResult frank_wolfe_minimize(const CurlObjective& objective,
                                      const TransitionKernel& kernel,
                                      const InitialDistribution& mu0, Index max_iterations,
                                      double gap_tolerance) {
    const MdpShape& shape = kernel.shape();
    OccupancyMeasure mu = occupancy_from_policy(Policy::uniform(shape), kernel, mu0);
    double gap = std::numeric_limits<double>::infinity();

    for (Index it = 0; it < max_iterations; ++it) {
        const GradientField grad = objective.gradient(mu);
        const Policy greedy = backward_induction_policy(grad, kernel);
        const OccupancyMeasure vertex = occupancy_from_policy(greedy, kernel, mu0);

        gap = 0.0;
        for (Index n = 1; n <= shape.horizon; ++n)
            for (Index x = 0; x < shape.num_states; ++x)
                for (Index a = 0; a < shape.num_actions; ++a)
                    gap += grad.at(n, x, a) * (mu.at(n, x, a) - vertex.at(n, x, a));
        if (gap < gap_tolerance) break;

        // Exact line search on the segment (objective convex along it).
        auto value_at = [&](double t) {
            OccupancyMeasure probe = mu;
            for (Index n = 0; n <= shape.horizon; ++n) {
                auto dst = probe.slice(n);
                auto v = vertex.slice(n);
                auto m = mu.slice(n);
                for (Index i = 0; i < dst.size(); ++i) dst[i] = (1.0 - t) * m[i] + t * v[i];
            }
            return objective.value(probe);
        };
        double lo = 0.0, hi = 1.0;
        for (int step = 0; step < 70; ++step) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (value_at(m1) <= value_at(m2)) hi = m2;
            else lo = m1;
        }
        const double t = 0.5 * (lo + hi);
        for (Index n = 0; n <= shape.horizon; ++n) {
            auto dst = mu.slice(n);
            auto v = vertex.slice(n);
            for (Index i = 0; i < dst.size(); ++i) dst[i] = (1.0 - t) * dst[i] + t * v[i];
        }
    }
    return FrankWolfeResult{mu, objective.value(mu), gap};
}

} // namespace curl::testing
