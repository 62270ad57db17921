#include "curl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "curl/flow.hpp"

namespace curl {

double auxiliary_objective(const GradientField& grad, const OccupancyMeasure& mu,
                           const OccupancyMeasure& ref_mu, double tau) {
    const MdpShape& shape = grad.shape();
    detail::check_same_shape(shape, mu.shape(), "auxiliary_objective");
    double inner = 0.0;
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a)
                inner += grad.at(n, x, a) * mu.at(n, x, a);
    return tau * inner + gamma_divergence(mu, ref_mu);
}

namespace {

/// All lattice points of the |A|-simplex with denominator `resolution`,
/// optionally restricted to an L-inf ball around `center`.
std::vector<std::vector<double>> simplex_lattice(Index num_actions, Index resolution,
                                                 const double* center, double radius) {
    std::vector<std::vector<double>> points;
    std::vector<Index> counts(num_actions, 0);
    const double step = 1.0 / static_cast<double>(resolution);

    std::function<void(Index, Index)> recurse = [&](Index coord, Index remaining) {
        if (coord + 1 == num_actions) {
            counts[coord] = remaining;
            const double v = static_cast<double>(remaining) * step;
            if (center && std::fabs(v - center[coord]) > radius) return;
            std::vector<double> p(num_actions);
            for (Index a = 0; a < num_actions; ++a)
                p[a] = static_cast<double>(counts[a]) * step;
            points.push_back(std::move(p));
            return;
        }
        for (Index c = 0; c <= remaining; ++c) {
            const double v = static_cast<double>(c) * step;
            if (center && std::fabs(v - center[coord]) > radius) continue;
            counts[coord] = c;
            recurse(coord + 1, remaining - c);
        }
    };
    recurse(0, resolution);
    return points;
}

struct RowId {
    Index n; // 1..N
    Index x;
};

} // namespace

OccupancyMeasure auxiliary_problem_oracle(const GradientField& grad,
                                          const TransitionKernel& kernel,
                                          const InitialDistribution& mu0,
                                          const OccupancyMeasure& ref_mu, double tau) {
    const MdpShape& shape = kernel.shape();
    detail::check_same_shape(shape, grad.shape(), "auxiliary_problem_oracle");
    detail::check_same_shape(shape, ref_mu.shape(), "auxiliary_problem_oracle");
    if (shape.num_states * shape.num_actions > 6 || shape.horizon > 3)
        throw SizeError("auxiliary_problem_oracle: instance too large (need |X||A| <= 6, N <= 3)");
    if (!(tau >= 0.0)) throw ParameterError("auxiliary_problem_oracle: tau must be >= 0");

    std::vector<RowId> rows;
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x) rows.push_back({n, x});

    Policy candidate = Policy::uniform(shape);
    auto evaluate = [&]() {
        const OccupancyMeasure mu = occupancy_from_policy(candidate, kernel, mu0);
        return auxiliary_objective(grad, mu, ref_mu, tau);
    };

    // Stage 1: exhaustive joint search on a coarse lattice.
    const Index coarse = 4;
    const auto coarse_points = simplex_lattice(shape.num_actions, coarse, nullptr, 0.0);
    Policy best = candidate;
    double best_value = evaluate();
    std::function<void(Index)> joint = [&](Index r) {
        if (r == rows.size()) {
            const double v = evaluate();
            if (v < best_value) {
                best_value = v;
                best = candidate;
            }
            return;
        }
        for (const auto& point : coarse_points) {
            auto dst = candidate.row(rows[r].n, rows[r].x);
            std::copy(point.begin(), point.end(), dst.begin());
            joint(r + 1);
        }
    };
    joint(0);

    // Stage 2: cyclic per-row sweeps on lattices refined to step 2e-3. Each
    // sweep re-optimizes one row over its whole simplex grid (window-limited
    // only when the row grid would blow up).
    candidate = best;
    for (Index resolution : {Index{20}, Index{100}, Index{500}}) {
        const double prev_step = resolution == 20 ? 0.25 : (resolution == 100 ? 0.05 : 0.01);
        bool improved = true;
        for (int sweep = 0; sweep < 50 && improved; ++sweep) {
            improved = false;
            for (const RowId& row : rows) {
                auto dst = candidate.row(row.n, row.x);
                std::vector<double> center(dst.begin(), dst.end());
                const bool windowed = shape.num_actions > 2;
                const auto points =
                    simplex_lattice(shape.num_actions, resolution,
                                    windowed ? center.data() : nullptr, 2.0 * prev_step);
                std::vector<double> best_row(center);
                for (const auto& p : points) {
                    std::copy(p.begin(), p.end(), dst.begin());
                    const double v = evaluate();
                    if (v < best_value - 1e-15) {
                        best_value = v;
                        best_row.assign(p.begin(), p.end());
                        improved = true;
                    }
                }
                std::copy(best_row.begin(), best_row.end(), dst.begin());
            }
        }
    }
    return occupancy_from_policy(candidate, kernel, mu0);
}

} // namespace curl
