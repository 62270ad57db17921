#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "curl/errors.hpp"

// Dense tabular MDP data for a finite-horizon problem. Time steps run
// n = 0..N; the kernel and the policy are defined for n = 1..N, state-action
// distributions for n = 0..N. All arrays are row-major double precision with
// the fastest index innermost: kernel [n][x][a][x'], policy [n][x][a],
// occupancy [n][x][a].
namespace curl {

using Index = std::size_t;

/// Mass below this is treated as an exact zero in entropy/KL sums and in the
/// policy-recovery ratio.
inline constexpr double kZeroMass = 1e-300;

/// Row-sum tolerance for simplex validation.
inline constexpr double kSimplexTol = 1e-9;

/// Per-slice drift above which flow outputs renormalize themselves.
inline constexpr double kRenormDrift = 1e-12;

struct MdpShape {
    Index num_states{};
    Index num_actions{};
    Index horizon{}; // N

    void validate() const {
        if (num_states < 1 || num_actions < 1 || horizon < 1)
            throw ParameterError("MdpShape: all fields must be >= 1");
    }
    bool operator==(const MdpShape&) const = default;
};

namespace detail {
void check_same_shape(const MdpShape& a, const MdpShape& b, const char* what);
void check_probabilities(std::span<const double> values, const char* what);
void check_rows_sum_to_one(const std::vector<double>& values, Index row_len,
                           double tol, const char* what);
} // namespace detail

/// p_n(x'|x,a) for n = 1..N.
class TransitionKernel {
public:
    explicit TransitionKernel(MdpShape shape)
        : shape_(shape),
          probs_(shape.horizon * shape.num_states * shape.num_actions * shape.num_states, 0.0) {
        shape_.validate();
    }

    const MdpShape& shape() const { return shape_; }

    double at(Index n, Index x, Index a, Index xp) const { return probs_[offset(n, x, a) + xp]; }
    double& at(Index n, Index x, Index a, Index xp) { return probs_[offset(n, x, a) + xp]; }

    /// Distribution over next states, contiguous length |X|.
    std::span<const double> row(Index n, Index x, Index a) const {
        return {probs_.data() + offset(n, x, a), shape_.num_states};
    }
    std::span<double> row(Index n, Index x, Index a) {
        return {probs_.data() + offset(n, x, a), shape_.num_states};
    }

    std::span<const double> data() const { return probs_; }
    std::span<double> data() { return probs_; }

    /// Entries in [0,1], each (n,x,a) row summing to 1 within tol.
    void validate(double tol = kSimplexTol) const;

private:
    Index offset(Index n, Index x, Index a) const {
        return (((n - 1) * shape_.num_states + x) * shape_.num_actions + a) * shape_.num_states;
    }
    MdpShape shape_;
    std::vector<double> probs_;
};

/// pi_n(a|x) for n = 1..N.
class Policy {
public:
    explicit Policy(MdpShape shape)
        : shape_(shape), probs_(shape.horizon * shape.num_states * shape.num_actions, 0.0) {
        shape_.validate();
    }

    static Policy uniform(MdpShape shape);

    const MdpShape& shape() const { return shape_; }

    double at(Index n, Index x, Index a) const { return probs_[offset(n, x) + a]; }
    double& at(Index n, Index x, Index a) { return probs_[offset(n, x) + a]; }

    /// Action distribution at (n,x), contiguous length |A|.
    std::span<const double> row(Index n, Index x) const {
        return {probs_.data() + offset(n, x), shape_.num_actions};
    }
    std::span<double> row(Index n, Index x) {
        return {probs_.data() + offset(n, x), shape_.num_actions};
    }

    std::span<const double> data() const { return probs_; }
    std::span<double> data() { return probs_; }

    double min_entry() const;

    void validate(double tol = kSimplexTol) const;

    bool operator==(const Policy&) const = default;

private:
    Index offset(Index n, Index x) const {
        return ((n - 1) * shape_.num_states + x) * shape_.num_actions;
    }
    MdpShape shape_;
    std::vector<double> probs_;
};

/// mu_n(x,a) for n = 0..N; rho_n(x) is the action marginal of a slice.
class OccupancyMeasure {
public:
    explicit OccupancyMeasure(MdpShape shape)
        : shape_(shape), probs_((shape.horizon + 1) * shape.num_states * shape.num_actions, 0.0) {
        shape_.validate();
    }

    const MdpShape& shape() const { return shape_; }

    double at(Index n, Index x, Index a) const { return probs_[offset(n, x) + a]; }
    double& at(Index n, Index x, Index a) { return probs_[offset(n, x) + a]; }

    /// Full state-action slice at step n, length |X|*|A|.
    std::span<const double> slice(Index n) const {
        return {probs_.data() + offset(n, 0), shape_.num_states * shape_.num_actions};
    }
    std::span<double> slice(Index n) {
        return {probs_.data() + offset(n, 0), shape_.num_states * shape_.num_actions};
    }

    /// Action mass at (n,x), contiguous length |A|.
    std::span<const double> row(Index n, Index x) const {
        return {probs_.data() + offset(n, x), shape_.num_actions};
    }
    std::span<double> row(Index n, Index x) {
        return {probs_.data() + offset(n, x), shape_.num_actions};
    }

    /// rho_n(x) = sum_a mu_n(x,a).
    double state_marginal(Index n, Index x) const;

    std::span<const double> data() const { return probs_; }

    void validate(double tol = kSimplexTol) const;

    bool operator==(const OccupancyMeasure&) const = default;

private:
    Index offset(Index n, Index x) const {
        return (n * shape_.num_states + x) * shape_.num_actions;
    }
    MdpShape shape_;
    std::vector<double> probs_;
};

/// The fixed mu_0 over state-action pairs.
class InitialDistribution {
public:
    InitialDistribution(Index num_states, Index num_actions)
        : num_states_(num_states), num_actions_(num_actions),
          probs_(num_states * num_actions, 0.0) {
        if (num_states < 1 || num_actions < 1)
            throw ParameterError("InitialDistribution: dimensions must be >= 1");
    }

    static InitialDistribution dirac(Index num_states, Index num_actions, Index x, Index a);
    static InitialDistribution uniform(Index num_states, Index num_actions);

    Index num_states() const { return num_states_; }
    Index num_actions() const { return num_actions_; }

    double at(Index x, Index a) const { return probs_[x * num_actions_ + a]; }
    double& at(Index x, Index a) { return probs_[x * num_actions_ + a]; }

    std::span<const double> data() const { return probs_; }

    void validate(double tol = kSimplexTol) const;

private:
    Index num_states_;
    Index num_actions_;
    std::vector<double> probs_;
};

/// A real value per (n,x,a) for n = 1..N. Used both for objective gradients
/// and for the regularized state-action values of the backward recursion.
class StepTable {
public:
    explicit StepTable(MdpShape shape)
        : shape_(shape), values_(shape.horizon * shape.num_states * shape.num_actions, 0.0) {
        shape_.validate();
    }

    const MdpShape& shape() const { return shape_; }

    double at(Index n, Index x, Index a) const { return values_[offset(n, x) + a]; }
    double& at(Index n, Index x, Index a) { return values_[offset(n, x) + a]; }

    std::span<const double> row(Index n, Index x) const {
        return {values_.data() + offset(n, x), shape_.num_actions};
    }
    std::span<double> row(Index n, Index x) {
        return {values_.data() + offset(n, x), shape_.num_actions};
    }

    std::span<const double> data() const { return values_; }
    std::span<double> data() { return values_; }

    /// No NaN or infinity anywhere.
    void check_finite(const char* what = "StepTable") const;

private:
    Index offset(Index n, Index x) const {
        return ((n - 1) * shape_.num_states + x) * shape_.num_actions;
    }
    MdpShape shape_;
    std::vector<double> values_;
};

using GradientField = StepTable;
using QTilde = StepTable;

} // namespace curl
