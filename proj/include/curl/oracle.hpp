#pragma once

#include "curl/types.hpp"

// Independent brute-force verifier for one mirror-descent step. It never
// touches the backward recursion or the twist: it searches policy space
// directly and is only usable on tiny instances.
namespace curl {

/// tau * <grad, mu> + Gamma(mu, ref_mu), the objective of the per-iteration
/// auxiliary problem (the inner product runs over n = 1..N).
double auxiliary_objective(const GradientField& grad, const OccupancyMeasure& mu,
                           const OccupancyMeasure& ref_mu, double tau);

/// Minimizes the auxiliary objective over the Bellman-flow set by grid search
/// over per-(n,x) action simplices: one exhaustive joint pass on a coarse
/// lattice, then cyclic per-row sweeps on lattices refined down to step 2e-3.
/// Requires |X|*|A| <= 6 and N <= 3 (throws SizeError otherwise) and a ref_mu
/// induced by a strictly positive policy. Returns the best grid point's
/// occupancy.
OccupancyMeasure auxiliary_problem_oracle(const GradientField& grad,
                                          const TransitionKernel& kernel,
                                          const InitialDistribution& mu0,
                                          const OccupancyMeasure& ref_mu, double tau);

} // namespace curl
