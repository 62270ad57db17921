#pragma once

#include <memory>
#include <vector>

#include "curl/types.hpp"

namespace curl {

/// A separable convex objective F(mu) = sum_{n=1..N} f_n(mu_n). The n = 0
/// slice is fixed by mu0 and never enters the value. Implementations are
/// immutable; value and gradient are pure and must accept slices that are not
/// exactly on the simplex (finite-difference probes perturb coordinates
/// without re-projection).
class CurlObjective {
public:
    virtual ~CurlObjective() = default;

    virtual double value(const OccupancyMeasure& mu) const = 0;
    virtual GradientField gradient(const OccupancyMeasure& mu) const = 0;

    /// Per-step Lipschitz constant of f_n w.r.t. ||.||_1. The aggregate
    /// constant is L = l * N.
    virtual double lipschitz_l() const = 0;
};

/// L = l * N for the given horizon.
double lipschitz_big_l(const CurlObjective& objective, const MdpShape& shape);

/// State indices targeted by the multi-objective loss.
struct TargetSet {
    std::vector<Index> states;
    void validate(Index num_states) const;
};

/// Entry mass clamp inside the entropy gradient's log (the gradient is
/// undefined at rho = 0; the clamp keeps unvisited states maximally
/// attractive without NaNs).
inline constexpr double kEntropyRhoClamp = 1e-12;

/// f_n(mu_n) = <rho_n, log rho_n>; minimizing it maximizes state entropy.
std::unique_ptr<CurlObjective> entropy_objective(const MdpShape& shape);

/// f_n(mu_n) = sum_k (1 - rho_n(x_k))^2, the quadratic miss penalty over the
/// target states; minimizing it concentrates mass on the targets.
std::unique_ptr<CurlObjective> multi_objective(const MdpShape& shape, TargetSet targets);

/// F(mu) = -<mu, r>, the classic linear-reward case.
std::unique_ptr<CurlObjective> linear_objective(StepTable reward);

/// Central finite differences of value() per coordinate, no re-projection.
/// Testing oracle for the analytic gradients; h must lie in [1e-8, 1e-4].
GradientField finite_difference_gradient(const CurlObjective& objective,
                                         const OccupancyMeasure& mu, double h);

} // namespace curl
