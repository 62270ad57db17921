#pragma once

#include <cstdint>
#include <vector>

#include "curl/flow.hpp"
#include "curl/objectives.hpp"
#include "curl/rng.hpp"
#include "curl/types.hpp"

// Test fixtures and independent oracles. Nothing here may route through the
// code path it is used to check: the enumeration oracle walks trajectories,
// the induction oracle is classic unregularized DP, and the Frank-Wolfe
// oracle only consumes gradients and linear minimization.
namespace curl::testing {

/// Random kernel with strictly positive rows (Dirichlet-ish via exponentials).
TransitionKernel random_kernel(const MdpShape& shape, SplitMix64& rng);

/// Random strictly positive policy.
Policy random_policy(const MdpShape& shape, SplitMix64& rng);

/// Random strictly positive initial distribution.
InitialDistribution random_initial(const MdpShape& shape, SplitMix64& rng);

/// Random strictly interior occupancy-shaped array (each slice a dense
/// distribution; not a flow of any kernel).
OccupancyMeasure random_occupancy(const MdpShape& shape, SplitMix64& rng);

/// State-action distributions computed by exhaustively enumerating all
/// (|X||A|)^{N+1} trajectories and accumulating their probabilities.
OccupancyMeasure occupancy_by_enumeration(const Policy& policy, const TransitionKernel& kernel,
                                          const InitialDistribution& mu0);

/// Probability of every full trajectory (x_0,a_0),...,(x_N,a_N), flattened in
/// lexicographic order of the state-action indices. Basis for the joint-KL
/// identity check.
std::vector<double> joint_trajectory_distribution(const Policy& policy,
                                                  const TransitionKernel& kernel,
                                                  const InitialDistribution& mu0);

/// Deterministic minimizer of sum_{n=1..N} <cost_n, mu_n> over the flow set:
/// textbook backward induction, no regularization.
Policy backward_induction_policy(const StepTable& cost, const TransitionKernel& kernel);

struct FrankWolfeResult {
    OccupancyMeasure occupancy;
    double value;
    double gap; // final duality gap; certifies value - F* <= gap
};

/// Frank-Wolfe over the Bellman-flow polytope with exact line search; an
/// independent convex solver used as the convergence oracle for the offline
/// algorithm.
FrankWolfeResult frank_wolfe_minimize(const CurlObjective& objective,
                                      const TransitionKernel& kernel,
                                      const InitialDistribution& mu0, Index max_iterations,
                                      double gap_tolerance);

} // namespace curl::testing
