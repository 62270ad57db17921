#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "curl/config.hpp"
#include "curl/objectives.hpp"
#include "curl/online.hpp"

namespace curl {

/// Config resolved into runnable pieces, with the effective learning rate.
struct ResolvedExperiment {
    MdpShape shape;
    NoiseDynamics dynamics;
    InitialDistribution mu0;
    std::shared_ptr<const CurlObjective> objective;
    double tau{};
    double b{}; // online rate constant; 0 for offline jobs
};

ResolvedExperiment resolve_experiment(const ExperimentConfig& config);

/// Offline job: writes objective.csv, policy_final.txt, occupancy_final.txt
/// and rho_n<NN>.txt for every requested step into config.out_dir.
void run_solve_job(const ExperimentConfig& config);

/// Online job: one regret_<variant>.csv per configured variant plus a
/// combined comparison.csv; estimator snapshots in the kernel text format
/// every snapshot_every episodes when requested.
void run_online_job(const ExperimentConfig& config);

/// Echoes the resolved effective parameters without running anything.
void print_resolved(const ExperimentConfig& config, std::ostream& out);

} // namespace curl
