#include "curl/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace curl {

double lipschitz_big_l(const CurlObjective& objective, const MdpShape& shape) {
    return objective.lipschitz_l() * static_cast<double>(shape.horizon);
}

void TargetSet::validate(Index num_states) const {
    if (states.empty()) throw ParameterError("TargetSet: empty");
    for (Index x : states)
        if (x >= num_states)
            throw ParameterError("TargetSet: state index " + std::to_string(x) +
                                 " out of range");
}

namespace {

class EntropyObjective final : public CurlObjective {
public:
    explicit EntropyObjective(MdpShape shape) : shape_(shape) { shape_.validate(); }

    double value(const OccupancyMeasure& mu) const override {
        detail::check_same_shape(shape_, mu.shape(), "entropy objective");
        double acc = 0.0;
        for (Index n = 1; n <= shape_.horizon; ++n)
            for (Index x = 0; x < shape_.num_states; ++x) {
                const double rho = mu.state_marginal(n, x);
                if (rho > kZeroMass) acc += rho * std::log(rho);
            }
        return acc;
    }

    GradientField gradient(const OccupancyMeasure& mu) const override {
        detail::check_same_shape(shape_, mu.shape(), "entropy objective");
        GradientField grad(shape_);
        for (Index n = 1; n <= shape_.horizon; ++n)
            for (Index x = 0; x < shape_.num_states; ++x) {
                const double rho = std::max(mu.state_marginal(n, x), kEntropyRhoClamp);
                const double g = std::log(rho) + 1.0;
                for (Index a = 0; a < shape_.num_actions; ++a) grad.at(n, x, a) = g;
            }
        return grad;
    }

    double lipschitz_l() const override { return std::fabs(std::log(kEntropyRhoClamp)) + 1.0; }

private:
    MdpShape shape_;
};

class MultiTargetObjective final : public CurlObjective {
public:
    MultiTargetObjective(MdpShape shape, TargetSet targets)
        : shape_(shape), targets_(std::move(targets)) {
        shape_.validate();
        targets_.validate(shape_.num_states);
    }

    // Convex penalty for mass missing the targets, so the minimizer
    // concentrates on them. (The concave-utility form differs by a sign; the
    // experiments this reproduces drive this quantity down.)
    double value(const OccupancyMeasure& mu) const override {
        detail::check_same_shape(shape_, mu.shape(), "multi objective");
        double acc = 0.0;
        for (Index n = 1; n <= shape_.horizon; ++n)
            for (Index x : targets_.states) {
                const double miss = 1.0 - mu.state_marginal(n, x);
                acc += miss * miss;
            }
        return acc;
    }

    GradientField gradient(const OccupancyMeasure& mu) const override {
        detail::check_same_shape(shape_, mu.shape(), "multi objective");
        GradientField grad(shape_);
        for (Index n = 1; n <= shape_.horizon; ++n)
            for (Index x : targets_.states) {
                const double g = -2.0 * (1.0 - mu.state_marginal(n, x));
                for (Index a = 0; a < shape_.num_actions; ++a) grad.at(n, x, a) = g;
            }
        return grad;
    }

    double lipschitz_l() const override { return 2.0; }

private:
    MdpShape shape_;
    TargetSet targets_;
};

class LinearObjective final : public CurlObjective {
public:
    explicit LinearObjective(StepTable reward) : reward_(std::move(reward)) {
        reward_.check_finite("linear objective reward");
        double m = 0.0;
        for (double v : reward_.data()) m = std::max(m, std::fabs(v));
        lipschitz_ = m;
    }

    double value(const OccupancyMeasure& mu) const override {
        detail::check_same_shape(reward_.shape(), mu.shape(), "linear objective");
        const MdpShape& shape = reward_.shape();
        double acc = 0.0;
        for (Index n = 1; n <= shape.horizon; ++n)
            for (Index x = 0; x < shape.num_states; ++x)
                for (Index a = 0; a < shape.num_actions; ++a)
                    acc -= mu.at(n, x, a) * reward_.at(n, x, a);
        return acc;
    }

    GradientField gradient(const OccupancyMeasure& mu) const override {
        detail::check_same_shape(reward_.shape(), mu.shape(), "linear objective");
        GradientField grad(reward_.shape());
        auto out = grad.data();
        auto r = reward_.data();
        for (Index i = 0; i < out.size(); ++i) out[i] = -r[i];
        return grad;
    }

    double lipschitz_l() const override { return lipschitz_; }

private:
    StepTable reward_;
    double lipschitz_;
};

} // namespace

std::unique_ptr<CurlObjective> entropy_objective(const MdpShape& shape) {
    return std::make_unique<EntropyObjective>(shape);
}

std::unique_ptr<CurlObjective> multi_objective(const MdpShape& shape, TargetSet targets) {
    return std::make_unique<MultiTargetObjective>(shape, std::move(targets));
}

std::unique_ptr<CurlObjective> linear_objective(StepTable reward) {
    return std::make_unique<LinearObjective>(std::move(reward));
}

GradientField finite_difference_gradient(const CurlObjective& objective,
                                         const OccupancyMeasure& mu, double h) {
    if (!(h >= 1e-8 && h <= 1e-4))
        throw ParameterError("finite_difference_gradient: h outside [1e-8, 1e-4]");
    const MdpShape& shape = mu.shape();
    GradientField grad(shape);
    OccupancyMeasure probe = mu;
    for (Index n = 1; n <= shape.horizon; ++n)
        for (Index x = 0; x < shape.num_states; ++x)
            for (Index a = 0; a < shape.num_actions; ++a) {
                const double base = probe.at(n, x, a);
                probe.at(n, x, a) = base + h;
                const double up = objective.value(probe);
                probe.at(n, x, a) = base - h;
                const double down = objective.value(probe);
                probe.at(n, x, a) = base;
                grad.at(n, x, a) = (up - down) / (2.0 * h);
            }
    return grad;
}

} // namespace curl
