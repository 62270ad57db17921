#include "curl/gridworld.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "curl/kernels.hpp"

namespace curl {

NoiseDynamics::NoiseDynamics(MdpShape shape, Index noise_count, StepMap step_map,
                             std::vector<double> noise_probs)
    : shape_(shape), noise_count_(noise_count), step_map_(std::move(step_map)),
      noise_dist_(std::move(noise_probs)) {
    shape_.validate();
    if (noise_count_ < 1) throw ParameterError("NoiseDynamics: empty noise support");
    if (noise_dist_.size() != shape_.horizon * noise_count_)
        throw DimensionError("NoiseDynamics: noise distribution size mismatch");
    for (Index n = 1; n <= shape_.horizon; ++n) {
        const double s = kernels::sum(noise_dist(n));
        if (std::fabs(s - 1.0) > 1e-12)
            throw ParameterError("NoiseDynamics: h_" + std::to_string(n) + " sums to " +
                                 std::to_string(s));
    }
    for (Index n = 1; n <= shape_.horizon; ++n)
        for (Index x = 0; x < shape_.num_states; ++x)
            for (Index a = 0; a < shape_.num_actions; ++a)
                for (Index e = 0; e < noise_count_; ++e)
                    if (step_map_(n, x, a, e) >= shape_.num_states)
                        throw ParameterError("NoiseDynamics: step map leaves the state space");
}

GridGeometry GridGeometry::four_rooms(Index side) {
    if (side < 5 || side % 2 == 0)
        throw ParameterError("GridGeometry: side must be odd and >= 5");
    GridGeometry geom;
    geom.side = side;
    geom.wall.assign(side * side, false);
    const Index mid = side / 2;
    for (Index c = 0; c < side; ++c) geom.wall[geom.flat(mid, c)] = true;
    for (Index r = 0; r < side; ++r) geom.wall[geom.flat(r, mid)] = true;
    const Index near = mid / 2;
    const Index far = mid + 1 + mid / 2;
    const std::array<std::pair<Index, Index>, 4> doors{
        {{mid, near}, {mid, far}, {near, mid}, {far, mid}}};
    for (auto [r, c] : doors) {
        geom.wall[geom.flat(r, c)] = false;
        geom.doors.push_back(geom.flat(r, c));
    }
    return geom;
}

NoiseDynamics four_room_gridworld(Index side, Index horizon,
                                  const std::array<double, kGridNoiseCount>& noise_probs) {
    for (double p : noise_probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw ParameterError("four_room_gridworld: noise probability outside [0,1]");
    if (!(noise_probs[kGridNoiseNone] > 0.0))
        throw ParameterError("four_room_gridworld: the no-perturbation mass must be positive");
    GridGeometry geom = GridGeometry::four_rooms(side);

    const MdpShape shape{side * side, kGridNumActions, horizon};
    shape.validate();

    auto blocked_move = [geom](Index from, int dr, int dc) -> Index {
        const long long row = static_cast<long long>(from / geom.side) + dr;
        const long long col = static_cast<long long>(from % geom.side) + dc;
        if (!geom.in_bounds(row, col) ||
            geom.is_wall(static_cast<Index>(row), static_cast<Index>(col)))
            return from;
        return geom.flat(static_cast<Index>(row), static_cast<Index>(col));
    };
    auto step = [geom, blocked_move](Index, Index x, Index a, Index eps) -> Index {
        // Wall cells are absorbing; reachable mass never enters them.
        if (geom.wall[x]) return x;
        const Index after_action = blocked_move(x, kGridActionMoves[a][0], kGridActionMoves[a][1]);
        return blocked_move(after_action, kGridNoiseMoves[eps][0], kGridNoiseMoves[eps][1]);
    };

    std::vector<double> dist(horizon * kGridNoiseCount);
    for (Index n = 0; n < horizon; ++n)
        for (Index e = 0; e < kGridNoiseCount; ++e)
            dist[n * kGridNoiseCount + e] = noise_probs[e];
    return NoiseDynamics(shape, kGridNoiseCount, step, std::move(dist));
}

NoiseDynamics four_room_gridworld(Index side, Index horizon, double up_noise_prob) {
    if (!(up_noise_prob >= 0.0 && up_noise_prob < 1.0))
        throw ParameterError("four_room_gridworld: up-noise probability outside [0,1)");
    std::array<double, kGridNoiseCount> probs{};
    probs[kGridNoiseNone] = 1.0 - up_noise_prob;
    probs[1] = up_noise_prob; // up
    return four_room_gridworld(side, horizon, probs);
}

InitialDistribution gridworld_initial_distribution(Index side) {
    return InitialDistribution::dirac(side * side, kGridNumActions, 0, kGridActionStay);
}

TransitionKernel kernel_from_dynamics(const NoiseDynamics& dynamics) {
    const MdpShape& shape = dynamics.shape();
    TransitionKernel kernel(shape);
    for (Index n = 1; n <= shape.horizon; ++n) {
        auto h = dynamics.noise_dist(n);
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a) {
                auto row = kernel.row(n, x, a);
                for (Index e = 0; e < dynamics.noise_count(); ++e)
                    row[dynamics.step(n, x, a, e)] += h[e];
            }
    }
    return kernel;
}

} // namespace curl
