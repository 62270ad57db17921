#include "curl/flow.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "curl/kernels.hpp"

namespace curl {

namespace {

void check_flow_inputs(const MdpShape& shape, const TransitionKernel& kernel,
                       const InitialDistribution& mu0, const char* what) {
    detail::check_same_shape(shape, kernel.shape(), what);
    if (mu0.num_states() != shape.num_states || mu0.num_actions() != shape.num_actions)
        throw DimensionError(std::string(what) + ": initial distribution shape mismatch");
}

} // namespace

OccupancyMeasure occupancy_from_policy(const Policy& policy, const TransitionKernel& kernel,
                                       const InitialDistribution& mu0) {
    const MdpShape& shape = policy.shape();
    check_flow_inputs(shape, kernel, mu0, "occupancy_from_policy");

    OccupancyMeasure mu(shape);
    std::copy(mu0.data().begin(), mu0.data().end(), mu.slice(0).begin());

    std::vector<double> state_mass(shape.num_states);
    for (Index n = 1; n <= shape.horizon; ++n) {
        std::fill(state_mass.begin(), state_mass.end(), 0.0);
        for (Index x = 0; x < shape.num_states; ++x) {
            for (Index a = 0; a < shape.num_actions; ++a) {
                const double w = mu.at(n - 1, x, a);
                if (w == 0.0) continue;
                kernels::axpy(w, kernel.row(n, x, a), state_mass);
            }
        }
        for (Index xp = 0; xp < shape.num_states; ++xp)
            kernels::scaled_copy(state_mass[xp], policy.row(n, xp), mu.row(n, xp));

        const double s = kernels::sum(mu.slice(n));
        if (s > 0.0 && std::fabs(s - 1.0) > kRenormDrift) {
            const double inv = 1.0 / s;
            for (double& v : mu.slice(n)) v *= inv;
        }
    }
    return mu;
}

Policy policy_from_occupancy(const OccupancyMeasure& mu) {
    const MdpShape& shape = mu.shape();
    Policy pi(shape);
    const double uniform = 1.0 / static_cast<double>(shape.num_actions);
    for (Index n = 1; n <= shape.horizon; ++n) {
        for (Index x = 0; x < shape.num_states; ++x) {
            const double rho = mu.state_marginal(n, x);
            auto out = pi.row(n, x);
            if (rho > kZeroMass) {
                kernels::scaled_copy(1.0 / rho, mu.row(n, x), out);
            } else {
                std::fill(out.begin(), out.end(), uniform);
            }
        }
    }
    return pi;
}

bool check_bellman_flow(const OccupancyMeasure& mu, const TransitionKernel& kernel,
                        const InitialDistribution& mu0, double tol) {
    const MdpShape& shape = mu.shape();
    check_flow_inputs(shape, kernel, mu0, "check_bellman_flow");

    auto slice0 = mu.slice(0);
    auto init = mu0.data();
    for (Index i = 0; i < slice0.size(); ++i)
        if (std::fabs(slice0[i] - init[i]) > tol) return false;

    std::vector<double> inflow(shape.num_states);
    for (Index n = 1; n <= shape.horizon; ++n) {
        std::fill(inflow.begin(), inflow.end(), 0.0);
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a) {
                const double w = mu.at(n - 1, x, a);
                if (w == 0.0) continue;
                kernels::axpy(w, kernel.row(n, x, a), inflow);
            }
        for (Index xp = 0; xp < shape.num_states; ++xp)
            if (std::fabs(mu.state_marginal(n, xp) - inflow[xp]) > tol) return false;
    }
    return true;
}

double gamma_divergence(const OccupancyMeasure& mu, const OccupancyMeasure& mu_ref) {
    detail::check_same_shape(mu.shape(), mu_ref.shape(), "gamma_divergence");
    const MdpShape& shape = mu.shape();
    const Policy pi = policy_from_occupancy(mu);
    const Policy pi_ref = policy_from_occupancy(mu_ref);

    double acc = 0.0;
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a) {
                const double m = mu.at(n, x, a);
                if (m <= kZeroMass) continue;
                const double q = pi_ref.at(n, x, a);
                if (q <= 0.0)
                    throw DomainError("gamma_divergence: reference policy vanishes at (n=" +
                                      std::to_string(n) + ", x=" + std::to_string(x) +
                                      ", a=" + std::to_string(a) + ")");
                acc += m * std::log(pi.at(n, x, a) / q);
            }
    // Mathematically a mixture of row KLs, hence nonnegative; absorb
    // cancellation noise.
    if (acc < 0.0 && acc > -1e-12) acc = 0.0;
    return acc;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    double acc = 0.0;
    for (Index i = 0; i < p.size(); ++i) {
        if (p[i] <= kZeroMass) continue;
        if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
        acc += p[i] * std::log(p[i] / q[i]);
    }
    return acc;
}

double gamma_divergence_decomposed(const OccupancyMeasure& mu, const OccupancyMeasure& mu_ref) {
    detail::check_same_shape(mu.shape(), mu_ref.shape(), "gamma_divergence_decomposed");
    const MdpShape& shape = mu.shape();
    double acc = 0.0;
    std::vector<double> rho(shape.num_states), rho_ref(shape.num_states);
    for (Index n = 1; n <= shape.horizon; ++n) {
        acc += kl_divergence(mu.slice(n), mu_ref.slice(n));
        for (Index x = 0; x < shape.num_states; ++x) {
            rho[x] = mu.state_marginal(n, x);
            rho_ref[x] = mu_ref.state_marginal(n, x);
        }
        acc -= kl_divergence(rho, rho_ref);
    }
    return acc;
}

double norm_inf_1(const OccupancyMeasure& a, const OccupancyMeasure& b) {
    detail::check_same_shape(a.shape(), b.shape(), "norm_inf_1");
    double best = 0.0;
    for (Index n = 0; n <= a.shape().horizon; ++n)
        best = std::max(best, kernels::l1_distance(a.slice(n), b.slice(n)));
    return best;
}

} // namespace curl
