#pragma once

#include <iosfwd>
#include <string>

#include "curl/simulate.hpp"
#include "curl/types.hpp"

// Plain-text array formats. Every file starts with the header
//   # shape |X| |A| N
// followed by one record per line, tab separated, values printed with 17
// significant digits so parsing is lossless:
//   occupancy / policy / reward:  n <tab> x <tab> a <tab> value
//   kernel:                       n <tab> x <tab> a <tab> x' <tab> value
// Occupancy records cover n = 0..N, the others n = 1..N.
namespace curl::io {

void write_occupancy(std::ostream& out, const OccupancyMeasure& mu);
void write_occupancy(const std::string& path, const OccupancyMeasure& mu);
OccupancyMeasure read_occupancy(std::istream& in);
OccupancyMeasure read_occupancy(const std::string& path);

void write_policy(std::ostream& out, const Policy& policy);
void write_policy(const std::string& path, const Policy& policy);
Policy read_policy(std::istream& in);
Policy read_policy(const std::string& path);

void write_step_table(std::ostream& out, const StepTable& table);
StepTable read_step_table(std::istream& in);
StepTable read_step_table(const std::string& path);

void write_kernel(std::ostream& out, const TransitionKernel& kernel);
void write_kernel(const std::string& path, const TransitionKernel& kernel);
TransitionKernel read_kernel(std::istream& in);
TransitionKernel read_kernel(const std::string& path);

/// State marginal of one occupancy slice on a side x side board, one
/// `row <tab> col <tab> value` line per cell.
void write_rho_grid(const std::string& path, const OccupancyMeasure& mu, Index n, Index side);

/// Trajectory log: one `j <tab> n <tab> x <tab> a <tab> eps` line per agent
/// and step, n = 0..N; the n = 0 line has no realized noise and logs eps -1.
void write_trajectories(const std::string& path, const TrajectoryBatch& batch);

/// 17-significant-digit rendering used by every emitter.
std::string format_value(double v);

} // namespace curl::io
