#pragma once

#include <memory>
#include <vector>

#include "curl/gridworld.hpp"
#include "curl/simulate.hpp"
#include "curl/types.hpp"

namespace curl {

enum class EstimatorMode { noise_based, count_based, never_learn, known_dynamics };

/// Running estimate of the transition kernel together with its sufficient
/// statistics. Every mode starts from the uniform kernel p^1(.|x,a) = 1/|X|
/// except never_learn (frozen at the noiseless dynamics) and known_dynamics
/// (frozen at the truth).
class KernelEstimate {
public:
    /// Empirical pushforward of observed noises through the known step map.
    static KernelEstimate noise_based(const NoiseDynamics& dynamics);
    /// Visit/transition-count ratio estimator for fully unknown dynamics.
    static KernelEstimate count_based(MdpShape shape);
    /// p_n(.|x,a) = dirac at g_n(x,a,none), never updated.
    static KernelEstimate never_learn(const NoiseDynamics& dynamics);
    /// The true kernel, never updated.
    static KernelEstimate known_dynamics(TransitionKernel truth);

    EstimatorMode mode() const { return mode_; }
    const MdpShape& shape() const { return kernel_.shape(); }

    /// The current estimate p-hat.
    const TransitionKernel& kernel() const { return kernel_; }

    /// Noise observations per step so far (M_n^t; identical across n).
    Index noise_observations() const { return noise_total_; }
    /// Stored noise-symbol counts at step n (noise mode).
    std::span<const Index> noise_counts(Index n) const;

    /// Count-based sufficient statistics for kernel slice n (visits at step
    /// n-1 followed by the observed arrival state).
    Index visit_count(Index n, Index x, Index a) const;
    Index transition_count(Index n, Index x, Index a, Index xp) const;

    friend void update_noise_estimate(KernelEstimate& estimate, const TrajectoryBatch& batch,
                                      Index episode);
    friend void update_count_estimate(KernelEstimate& estimate, const TrajectoryBatch& batch);

private:
    explicit KernelEstimate(EstimatorMode mode, TransitionKernel kernel);

    void rebuild_from_noise_counts();
    void rebuild_count_rows(const std::vector<bool>& touched);

    EstimatorMode mode_;
    TransitionKernel kernel_;
    std::shared_ptr<const NoiseDynamics> dynamics_; // noise mode only
    std::vector<Index> noise_counts_;               // [n-1][eps]
    Index noise_total_{};
    std::vector<Index> visits_;      // [n-1][x][a]
    std::vector<Index> transitions_; // [n-1][x][a][x']
};

/// Folds one episode's realized noises into a noise-based estimate; after the
/// call the kernel equals the empirical pushforward over all M*t observations,
/// which coincides with the paper's incremental convex-combination update.
/// `episode` is the 1-based index the batch came from.
void update_noise_estimate(KernelEstimate& estimate, const TrajectoryBatch& batch, Index episode);

/// Folds one episode's (x, a, x') transitions into a count-based estimate.
/// Rows never visited keep the uniform prior.
void update_count_estimate(KernelEstimate& estimate, const TrajectoryBatch& batch);

} // namespace curl
