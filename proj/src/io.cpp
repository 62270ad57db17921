#include "curl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curl::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

MdpShape read_header(std::istream& in) {
    std::string hash, word;
    MdpShape shape;
    if (!(in >> hash >> word >> shape.num_states >> shape.num_actions >> shape.horizon) ||
        hash != "#" || word != "shape")
        throw std::runtime_error("malformed header; expected '# shape |X| |A| N'");
    shape.validate();
    return shape;
}

void write_header(std::ostream& out, const MdpShape& shape) {
    out << "# shape " << shape.num_states << ' ' << shape.num_actions << ' ' << shape.horizon
        << '\n';
}

} // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_occupancy(std::ostream& out, const OccupancyMeasure& mu) {
    const MdpShape& s = mu.shape();
    write_header(out, s);
    for (Index n = 0; n <= s.horizon; ++n)
        for (Index x = 0; x < s.num_states; ++x)
            for (Index a = 0; a < s.num_actions; ++a)
                out << n << '\t' << x << '\t' << a << '\t' << format_value(mu.at(n, x, a))
                    << '\n';
}

void write_occupancy(const std::string& path, const OccupancyMeasure& mu) {
    auto out = open_out(path);
    write_occupancy(out, mu);
}

OccupancyMeasure read_occupancy(std::istream& in) {
    const MdpShape shape = read_header(in);
    OccupancyMeasure mu(shape);
    Index n, x, a;
    double v;
    while (in >> n >> x >> a >> v) {
        if (n > shape.horizon || x >= shape.num_states || a >= shape.num_actions)
            throw std::runtime_error("occupancy record out of range");
        mu.at(n, x, a) = v;
    }
    return mu;
}

OccupancyMeasure read_occupancy(const std::string& path) {
    auto in = open_in(path);
    return read_occupancy(in);
}

namespace {

template <typename Table>
void write_stepwise(std::ostream& out, const Table& table) {
    const MdpShape& s = table.shape();
    write_header(out, s);
    for (Index n = 1; n <= s.horizon; ++n)
        for (Index x = 0; x < s.num_states; ++x)
            for (Index a = 0; a < s.num_actions; ++a)
                out << n << '\t' << x << '\t' << a << '\t' << format_value(table.at(n, x, a))
                    << '\n';
}

template <typename Table>
Table read_stepwise(std::istream& in) {
    const MdpShape shape = read_header(in);
    Table table(shape);
    Index n, x, a;
    double v;
    while (in >> n >> x >> a >> v) {
        if (n < 1 || n > shape.horizon || x >= shape.num_states || a >= shape.num_actions)
            throw std::runtime_error("record out of range");
        table.at(n, x, a) = v;
    }
    return table;
}

} // namespace

void write_policy(std::ostream& out, const Policy& policy) { write_stepwise(out, policy); }

void write_policy(const std::string& path, const Policy& policy) {
    auto out = open_out(path);
    write_policy(out, policy);
}

Policy read_policy(std::istream& in) { return read_stepwise<Policy>(in); }

Policy read_policy(const std::string& path) {
    auto in = open_in(path);
    return read_policy(in);
}

void write_step_table(std::ostream& out, const StepTable& table) { write_stepwise(out, table); }

StepTable read_step_table(std::istream& in) { return read_stepwise<StepTable>(in); }

StepTable read_step_table(const std::string& path) {
    auto in = open_in(path);
    return read_step_table(in);
}

void write_kernel(std::ostream& out, const TransitionKernel& kernel) {
    const MdpShape& s = kernel.shape();
    write_header(out, s);
    for (Index n = 1; n <= s.horizon; ++n)
        for (Index x = 0; x < s.num_states; ++x)
            for (Index a = 0; a < s.num_actions; ++a)
                for (Index xp = 0; xp < s.num_states; ++xp)
                    out << n << '\t' << x << '\t' << a << '\t' << xp << '\t'
                        << format_value(kernel.at(n, x, a, xp)) << '\n';
}

void write_kernel(const std::string& path, const TransitionKernel& kernel) {
    auto out = open_out(path);
    write_kernel(out, kernel);
}

TransitionKernel read_kernel(std::istream& in) {
    const MdpShape shape = read_header(in);
    TransitionKernel kernel(shape);
    Index n, x, a, xp;
    double v;
    while (in >> n >> x >> a >> xp >> v) {
        if (n < 1 || n > shape.horizon || x >= shape.num_states || a >= shape.num_actions ||
            xp >= shape.num_states)
            throw std::runtime_error("kernel record out of range");
        kernel.at(n, x, a, xp) = v;
    }
    return kernel;
}

TransitionKernel read_kernel(const std::string& path) {
    auto in = open_in(path);
    return read_kernel(in);
}

void write_trajectories(const std::string& path, const TrajectoryBatch& batch) {
    auto out = open_out(path);
    for (Index j = 0; j < batch.num_agents; ++j)
        for (Index n = 0; n <= batch.shape.horizon; ++n) {
            out << j << '\t' << n << '\t' << batch.state(j, n) << '\t' << batch.action(j, n)
                << '\t';
            if (n == 0) out << -1;
            else out << batch.noise(j, n);
            out << '\n';
        }
}

void write_rho_grid(const std::string& path, const OccupancyMeasure& mu, Index n, Index side) {
    if (side * side != mu.shape().num_states)
        throw DimensionError("write_rho_grid: state space is not a side x side board");
    if (n > mu.shape().horizon) throw ParameterError("write_rho_grid: step out of range");
    auto out = open_out(path);
    for (Index row = 0; row < side; ++row)
        for (Index col = 0; col < side; ++col)
            out << row << '\t' << col << '\t'
                << format_value(mu.state_marginal(n, row * side + col)) << '\n';
}

} // namespace curl::io
