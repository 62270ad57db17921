#include "curl/simulate.hpp"

#include "curl/rng.hpp"

namespace curl {

TrajectoryBatch simulate_trajectories(const Policy& policy, const NoiseDynamics& dynamics,
                                      const InitialDistribution& mu0, Index num_agents,
                                      std::uint64_t seed) {
    const MdpShape& shape = dynamics.shape();
    detail::check_same_shape(shape, policy.shape(), "simulate_trajectories");
    if (mu0.num_states() != shape.num_states || mu0.num_actions() != shape.num_actions)
        throw DimensionError("simulate_trajectories: initial distribution shape mismatch");
    if (num_agents < 1) throw ParameterError("simulate_trajectories: need at least one agent");

    const Index N = shape.horizon;
    TrajectoryBatch batch{shape, num_agents, {}, {}, {}};
    batch.states.resize(num_agents * (N + 1));
    batch.actions.resize(num_agents * (N + 1));
    batch.noises.resize(num_agents * N);

    for (Index j = 0; j < num_agents; ++j) {
        SplitMix64 rng = SplitMix64::for_stream(seed, j);
        const Index start = rng.sample(mu0.data());
        Index x = start / shape.num_actions;
        Index a = start % shape.num_actions;
        batch.states[j * (N + 1)] = x;
        batch.actions[j * (N + 1)] = a;
        for (Index n = 1; n <= N; ++n) {
            const Index eps = rng.sample(dynamics.noise_dist(n));
            x = dynamics.step(n, x, a, eps);
            a = rng.sample(policy.row(n, x));
            batch.states[j * (N + 1) + n] = x;
            batch.actions[j * (N + 1) + n] = a;
            batch.noises[j * N + (n - 1)] = eps;
        }
    }
    return batch;
}

} // namespace curl
