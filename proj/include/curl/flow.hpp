#pragma once

#include "curl/types.hpp"

namespace curl {

/// Forward flow: mu_0 = mu0 and
/// mu_n(x',a') = sum_{x,a} mu_{n-1}(x,a) p_n(x'|x,a) pi_n(a'|x') for n = 1..N.
/// Slices renormalize themselves only when accumulated drift exceeds
/// kRenormDrift.
OccupancyMeasure occupancy_from_policy(const Policy& policy, const TransitionKernel& kernel,
                                       const InitialDistribution& mu0);

/// Recovers pi_n(a|x) = mu_n(x,a) / rho_n(x); rows with rho_n(x) = 0 get the
/// uniform action distribution.
Policy policy_from_occupancy(const OccupancyMeasure& mu);

/// True iff mu_0 = mu0 entrywise within tol and every step satisfies
/// |sum_{a'} mu_n(x',a') - sum_{x,a} p_n(x'|x,a) mu_{n-1}(x,a)| <= tol.
bool check_bellman_flow(const OccupancyMeasure& mu, const TransitionKernel& kernel,
                        const InitialDistribution& mu0, double tol);

/// Gamma(mu, mu_ref) = sum_{n=1..N} sum_{x,a} mu_n(x,a) log(pi_n(a|x) / pi'_n(a|x))
/// with the recovered policies and the 0 log 0 = 0 convention. Throws
/// DomainError naming (n,x,a) if the reference policy is zero where mu places
/// mass.
double gamma_divergence(const OccupancyMeasure& mu, const OccupancyMeasure& mu_ref);

/// The same divergence through its Bregman decomposition,
/// sum_n D(mu_n, mu'_n) - sum_n D(rho_n, rho'_n). Kept as an independent
/// algebraic route; tests compare it against gamma_divergence.
double gamma_divergence_decomposed(const OccupancyMeasure& mu, const OccupancyMeasure& mu_ref);

/// max over n = 0..N of ||a_n - b_n||_1.
double norm_inf_1(const OccupancyMeasure& a, const OccupancyMeasure& b);

/// KL divergence sum p_i log(p_i/q_i) over a pair of nonnegative vectors,
/// 0 log 0 = 0; infinite if q vanishes where p does not.
double kl_divergence(std::span<const double> p, std::span<const double> q);

} // namespace curl
