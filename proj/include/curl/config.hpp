#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curl/estimator.hpp"
#include "curl/gridworld.hpp"
#include "curl/online.hpp"
#include "curl/types.hpp"

namespace curl {

/// One experiment job, parsed from the line-oriented key=value format:
///
///   mode = offline | online
///   [environment]  grid_side, horizon, noise_up_prob | noise_probs
///   [objective]    objective = entropy | multi | linear, targets, reward_file
///   [solver]       iterations | episodes, agents, tau, alpha, estimator,
///                  variants, comparator_iterations, seed, snapshot_every
///   [output]       dir, rho_steps
///
/// Unknown sections or keys are rejected, with the offending line number.
struct ExperimentConfig {
    enum class Mode { offline, online };
    enum class ObjectiveKind { entropy, multi, linear };

    Mode mode{Mode::offline};

    // [environment]
    Index grid_side{11};
    Index horizon{40};
    double noise_up_prob{0.0};
    std::optional<std::array<double, kGridNoiseCount>> noise_probs{};

    // [objective]
    ObjectiveKind objective{ObjectiveKind::entropy};
    std::vector<Index> targets{};
    std::string reward_file{};

    // [solver]
    Index iterations{500};
    Index episodes{200};
    Index agents{10};
    std::optional<double> tau{}; // absent = auto
    ExplorationSchedule exploration{};
    EstimatorMode estimator{EstimatorMode::noise_based};
    std::vector<EstimatorMode> variants{}; // online job runs; defaults to {estimator}
    Index comparator_iterations{1000};
    std::uint64_t seed{0};
    Index snapshot_every{0};
    Index dump_trajectories{0}; // log the first k episodes' trajectories

    // [output]
    std::string out_dir{"out"};
    std::vector<Index> rho_steps{};

    /// Cross-field checks beyond per-key parsing.
    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

std::string to_string(EstimatorMode mode);
std::string to_string(ExperimentConfig::Mode mode);
std::string to_string(ExperimentConfig::ObjectiveKind kind);

} // namespace curl
