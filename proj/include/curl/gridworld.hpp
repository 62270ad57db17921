#pragma once

#include <array>
#include <functional>
#include <vector>

#include "curl/types.hpp"

namespace curl {

/// Noise-driven dynamics x_{n+1} = g_n(x_n, a_n, eps_n) with eps_n drawn from
/// a per-step categorical distribution h_n over a finite symbol set.
class NoiseDynamics {
public:
    using StepMap = std::function<Index(Index n, Index x, Index a, Index eps)>;

    /// noise_dist is indexed [n-1][eps] for n = 1..N; each slice must sum to 1
    /// within 1e-12 and the step map must return valid states everywhere.
    NoiseDynamics(MdpShape shape, Index noise_count, StepMap step_map,
                  std::vector<double> noise_dist);

    const MdpShape& shape() const { return shape_; }
    Index noise_count() const { return noise_count_; }

    Index step(Index n, Index x, Index a, Index eps) const { return step_map_(n, x, a, eps); }

    /// h_n, length noise_count().
    std::span<const double> noise_dist(Index n) const {
        return {noise_dist_.data() + (n - 1) * noise_count_, noise_count_};
    }

private:
    MdpShape shape_;
    Index noise_count_;
    StepMap step_map_;
    std::vector<double> noise_dist_;
};

/// Four-room layout on a side x side board: interior walls along the middle
/// row and column, one door per adjacent-room pair, the center cell solid.
/// All side^2 cells are state indices; wall cells are absorbing and carry no
/// mass.
struct GridGeometry {
    Index side{};
    std::vector<bool> wall;
    std::vector<Index> doors;

    static GridGeometry four_rooms(Index side);

    Index flat(Index row, Index col) const { return row * side + col; }
    bool is_wall(Index row, Index col) const { return wall[flat(row, col)]; }
    bool in_bounds(long long row, long long col) const {
        return row >= 0 && col >= 0 && row < static_cast<long long>(side) &&
               col < static_cast<long long>(side);
    }
};

/// Grid actions in the order used throughout: stay, right, down, up, left.
inline constexpr Index kGridNumActions = 5;
inline constexpr Index kGridActionStay = 0;
inline constexpr std::array<std::array<int, 2>, kGridNumActions> kGridActionMoves{
    {{0, 0}, {0, 1}, {1, 0}, {-1, 0}, {0, -1}}};

/// Noise symbols: none, up, down, left, right.
inline constexpr Index kGridNoiseCount = 5;
inline constexpr Index kGridNoiseNone = 0;
inline constexpr std::array<std::array<int, 2>, kGridNoiseCount> kGridNoiseMoves{
    {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

/// Gridworld with a general categorical perturbation over
/// {none, up, down, left, right}. The action displacement applies first and
/// the noise displacement second; each sub-step is cancelled independently if
/// it would cross a wall or leave the board. Stationary across steps.
NoiseDynamics four_room_gridworld(Index side, Index horizon,
                                  const std::array<double, kGridNoiseCount>& noise_probs);

/// The paper-style grid: noise pushes up with probability up_noise_prob,
/// otherwise nothing happens.
NoiseDynamics four_room_gridworld(Index side, Index horizon, double up_noise_prob);

/// Dirac at the upper-left corner with the stay action.
InitialDistribution gridworld_initial_distribution(Index side);

/// probs[n][x][a][x'] = sum of h_n(eps) over eps with g_n(x,a,eps) = x'.
TransitionKernel kernel_from_dynamics(const NoiseDynamics& dynamics);

} // namespace curl
