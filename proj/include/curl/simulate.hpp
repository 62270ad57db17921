#pragma once

#include <cstdint>
#include <vector>

#include "curl/gridworld.hpp"
#include "curl/types.hpp"

namespace curl {

/// Rollouts of M agents over one episode: states and actions at n = 0..N and
/// the realized noise indices at n = 1..N (the learner's observable).
struct TrajectoryBatch {
    MdpShape shape;
    Index num_agents{};
    std::vector<Index> states;  // [agent][n], n = 0..N
    std::vector<Index> actions; // [agent][n], n = 0..N
    std::vector<Index> noises;  // [agent][n-1], n = 1..N

    Index state(Index agent, Index n) const { return states[agent * (shape.horizon + 1) + n]; }
    Index action(Index agent, Index n) const { return actions[agent * (shape.horizon + 1) + n]; }
    Index noise(Index agent, Index n) const { return noises[agent * shape.horizon + (n - 1)]; }
};

/// Draws M independent trajectories: (x_0,a_0) ~ mu0, then for n = 1..N
/// eps_n ~ h_n, x_n = g_n(x_{n-1}, a_{n-1}, eps_n), a_n ~ pi_n(.|x_n).
/// Each agent uses its own substream of `seed`, so the batch is reproducible
/// bit-for-bit and independent of evaluation order.
TrajectoryBatch simulate_trajectories(const Policy& policy, const NoiseDynamics& dynamics,
                                      const InitialDistribution& mu0, Index num_agents,
                                      std::uint64_t seed);

} // namespace curl
