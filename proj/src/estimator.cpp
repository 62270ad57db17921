#include "curl/estimator.hpp"

#include <algorithm>
#include <string>

namespace curl {

namespace {

TransitionKernel uniform_kernel(const MdpShape& shape) {
    TransitionKernel kernel(shape);
    const double p = 1.0 / static_cast<double>(shape.num_states);
    std::fill(kernel.data().begin(), kernel.data().end(), p);
    return kernel;
}

} // namespace

KernelEstimate::KernelEstimate(EstimatorMode mode, TransitionKernel kernel)
    : mode_(mode), kernel_(std::move(kernel)) {}

KernelEstimate KernelEstimate::noise_based(const NoiseDynamics& dynamics) {
    KernelEstimate est(EstimatorMode::noise_based, uniform_kernel(dynamics.shape()));
    est.dynamics_ = std::make_shared<NoiseDynamics>(dynamics);
    est.noise_counts_.assign(dynamics.shape().horizon * dynamics.noise_count(), 0);
    return est;
}

KernelEstimate KernelEstimate::count_based(MdpShape shape) {
    shape.validate();
    KernelEstimate est(EstimatorMode::count_based, uniform_kernel(shape));
    est.visits_.assign(shape.horizon * shape.num_states * shape.num_actions, 0);
    est.transitions_.assign(
        shape.horizon * shape.num_states * shape.num_actions * shape.num_states, 0);
    return est;
}

KernelEstimate KernelEstimate::never_learn(const NoiseDynamics& dynamics) {
    const MdpShape& shape = dynamics.shape();
    TransitionKernel frozen(shape);
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a)
                frozen.at(n, x, a, dynamics.step(n, x, a, 0)) = 1.0;
    return KernelEstimate(EstimatorMode::never_learn, std::move(frozen));
}

KernelEstimate KernelEstimate::known_dynamics(TransitionKernel truth) {
    truth.validate();
    return KernelEstimate(EstimatorMode::known_dynamics, std::move(truth));
}

std::span<const Index> KernelEstimate::noise_counts(Index n) const {
    if (mode_ != EstimatorMode::noise_based)
        throw ParameterError("noise_counts: estimator is not noise-based");
    const Index e = dynamics_->noise_count();
    return {noise_counts_.data() + (n - 1) * e, e};
}

Index KernelEstimate::visit_count(Index n, Index x, Index a) const {
    if (mode_ != EstimatorMode::count_based)
        throw ParameterError("visit_count: estimator is not count-based");
    const MdpShape& s = shape();
    return visits_[((n - 1) * s.num_states + x) * s.num_actions + a];
}

Index KernelEstimate::transition_count(Index n, Index x, Index a, Index xp) const {
    if (mode_ != EstimatorMode::count_based)
        throw ParameterError("transition_count: estimator is not count-based");
    const MdpShape& s = shape();
    return transitions_[(((n - 1) * s.num_states + x) * s.num_actions + a) * s.num_states + xp];
}

void KernelEstimate::rebuild_from_noise_counts() {
    const MdpShape& s = shape();
    const Index noise_count = dynamics_->noise_count();
    const double inv_total = 1.0 / static_cast<double>(noise_total_);
    for (Index n = 1; n <= s.horizon; ++n) {
        const Index* counts = noise_counts_.data() + (n - 1) * noise_count;
        for (Index x = 0; x < s.num_states; ++x)
            for (Index a = 0; a < s.num_actions; ++a) {
                auto row = kernel_.row(n, x, a);
                std::fill(row.begin(), row.end(), 0.0);
                for (Index e = 0; e < noise_count; ++e) {
                    if (counts[e] == 0) continue;
                    row[dynamics_->step(n, x, a, e)] +=
                        static_cast<double>(counts[e]) * inv_total;
                }
            }
    }
}

void update_noise_estimate(KernelEstimate& estimate, const TrajectoryBatch& batch,
                           Index episode) {
    if (estimate.mode_ != EstimatorMode::noise_based)
        throw ParameterError("update_noise_estimate: estimator is not noise-based");
    const MdpShape& s = estimate.shape();
    detail::check_same_shape(s, batch.shape, "update_noise_estimate");
    const Index noise_count = estimate.dynamics_->noise_count();
    for (Index j = 0; j < batch.num_agents; ++j)
        for (Index n = 1; n <= s.horizon; ++n) {
            const Index eps = batch.noise(j, n);
            if (eps >= noise_count)
                throw ParameterError("update_noise_estimate: noise index out of range");
            ++estimate.noise_counts_[(n - 1) * noise_count + eps];
        }
    estimate.noise_total_ += batch.num_agents;
    if (estimate.noise_total_ != batch.num_agents * episode)
        throw ParameterError("update_noise_estimate: episode index " + std::to_string(episode) +
                             " inconsistent with " + std::to_string(estimate.noise_total_) +
                             " stored observations");
    estimate.rebuild_from_noise_counts();
}

void KernelEstimate::rebuild_count_rows(const std::vector<bool>& touched) {
    const MdpShape& s = shape();
    const double uniform = 1.0 / static_cast<double>(s.num_states);
    for (Index n = 1; n <= s.horizon; ++n)
        for (Index x = 0; x < s.num_states; ++x)
            for (Index a = 0; a < s.num_actions; ++a) {
                const Index flat = ((n - 1) * s.num_states + x) * s.num_actions + a;
                if (!touched[flat]) continue;
                auto row = kernel_.row(n, x, a);
                const Index visits = visits_[flat];
                if (visits == 0) {
                    // max{1, .} would give an all-zero row; keep the uniform
                    // prior the algorithm initializes with.
                    std::fill(row.begin(), row.end(), uniform);
                    continue;
                }
                const double inv = 1.0 / static_cast<double>(visits);
                const Index* trans = transitions_.data() + flat * s.num_states;
                for (Index xp = 0; xp < s.num_states; ++xp)
                    row[xp] = static_cast<double>(trans[xp]) * inv;
            }
}

void update_count_estimate(KernelEstimate& estimate, const TrajectoryBatch& batch) {
    if (estimate.mode_ != EstimatorMode::count_based)
        throw ParameterError("update_count_estimate: estimator is not count-based");
    const MdpShape& s = estimate.shape();
    detail::check_same_shape(s, batch.shape, "update_count_estimate");
    std::vector<bool> touched(s.horizon * s.num_states * s.num_actions, false);
    for (Index j = 0; j < batch.num_agents; ++j)
        for (Index n = 1; n <= s.horizon; ++n) {
            const Index x = batch.state(j, n - 1);
            const Index a = batch.action(j, n - 1);
            const Index xp = batch.state(j, n);
            const Index flat = ((n - 1) * s.num_states + x) * s.num_actions + a;
            ++estimate.visits_[flat];
            ++estimate.transitions_[flat * s.num_states + xp];
            touched[flat] = true;
        }
    estimate.rebuild_count_rows(touched);
}

} // namespace curl
