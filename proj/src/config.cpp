#include "curl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace curl {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_double(const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a number, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& value, int line) {
    std::uint64_t v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError(line, "expected a nonnegative integer, got '" + value + "'");
    return v;
}

EstimatorMode parse_estimator(const std::string& value, int line) {
    if (value == "noise") return EstimatorMode::noise_based;
    if (value == "counts") return EstimatorMode::count_based;
    if (value == "never") return EstimatorMode::never_learn;
    if (value == "known") return EstimatorMode::known_dynamics;
    throw ConfigError(line, "estimator must be noise | counts | never | known, got '" + value +
                                "'");
}

struct Entry {
    int line;
    std::string section;
    std::string key;
    std::string value;
};

} // namespace

std::string to_string(EstimatorMode mode) {
    switch (mode) {
        case EstimatorMode::noise_based: return "noise";
        case EstimatorMode::count_based: return "counts";
        case EstimatorMode::never_learn: return "never";
        case EstimatorMode::known_dynamics: return "known";
    }
    return "?";
}

std::string to_string(ExperimentConfig::Mode mode) {
    return mode == ExperimentConfig::Mode::offline ? "offline" : "online";
}

std::string to_string(ExperimentConfig::ObjectiveKind kind) {
    switch (kind) {
        case ExperimentConfig::ObjectiveKind::entropy: return "entropy";
        case ExperimentConfig::ObjectiveKind::multi: return "multi";
        case ExperimentConfig::ObjectiveKind::linear: return "linear";
    }
    return "?";
}

ExperimentConfig parse_config(std::istream& in) {
    std::vector<Entry> entries;
    std::string section;
    std::string line;
    int line_no = 0;
    bool saw_objective_section = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError(line_no, "unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (section != "environment" && section != "objective" && section != "solver" &&
                section != "output")
                throw ConfigError(line_no, "unknown section [" + section + "]");
            if (section == "objective") saw_objective_section = true;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'key = value', got '" + text + "'");
        entries.push_back(
            {line_no, section, trim(text.substr(0, eq)), trim(text.substr(eq + 1))});
    }

    ExperimentConfig cfg;
    bool saw_mode = false;
    bool saw_objective_key = false;
    std::optional<double> alpha_fixed;
    std::string alpha_word;
    int alpha_line = 0;

    for (const Entry& e : entries) {
        const std::string& k = e.key;
        const std::string& v = e.value;
        if (e.section.empty()) {
            if (k == "mode") {
                if (v == "offline") cfg.mode = ExperimentConfig::Mode::offline;
                else if (v == "online") cfg.mode = ExperimentConfig::Mode::online;
                else throw ConfigError(e.line, "mode must be offline or online");
                saw_mode = true;
            } else {
                throw ConfigError(e.line, "unknown top-level key '" + k + "'");
            }
        } else if (e.section == "environment") {
            if (k == "grid_side") cfg.grid_side = parse_u64(v, e.line);
            else if (k == "horizon") cfg.horizon = parse_u64(v, e.line);
            else if (k == "noise_up_prob") cfg.noise_up_prob = parse_double(v, e.line);
            else if (k == "noise_probs") {
                const auto items = split_list(v);
                if (items.size() != kGridNoiseCount)
                    throw ConfigError(e.line, "noise_probs needs exactly 5 values "
                                              "(none, up, down, left, right)");
                std::array<double, kGridNoiseCount> probs{};
                for (Index i = 0; i < kGridNoiseCount; ++i)
                    probs[i] = parse_double(items[i], e.line);
                cfg.noise_probs = probs;
            } else throw ConfigError(e.line, "unknown [environment] key '" + k + "'");
        } else if (e.section == "objective") {
            if (k == "objective") {
                if (v == "entropy") cfg.objective = ExperimentConfig::ObjectiveKind::entropy;
                else if (v == "multi") cfg.objective = ExperimentConfig::ObjectiveKind::multi;
                else if (v == "linear") cfg.objective = ExperimentConfig::ObjectiveKind::linear;
                else throw ConfigError(e.line, "objective must be entropy | multi | linear");
                saw_objective_key = true;
            } else if (k == "targets") {
                cfg.targets.clear();
                for (const auto& item : split_list(v))
                    cfg.targets.push_back(parse_u64(item, e.line));
            } else if (k == "reward_file") {
                cfg.reward_file = v;
            } else throw ConfigError(e.line, "unknown [objective] key '" + k + "'");
        } else if (e.section == "solver") {
            if (k == "iterations") cfg.iterations = parse_u64(v, e.line);
            else if (k == "episodes") cfg.episodes = parse_u64(v, e.line);
            else if (k == "agents") cfg.agents = parse_u64(v, e.line);
            else if (k == "tau") {
                if (v == "auto") cfg.tau.reset();
                else cfg.tau = parse_double(v, e.line);
            } else if (k == "alpha") {
                alpha_line = e.line;
                if (v == "decaying" || v == "constant") alpha_word = v;
                else alpha_fixed = parse_double(v, e.line);
            } else if (k == "estimator") {
                cfg.estimator = parse_estimator(v, e.line);
            } else if (k == "variants") {
                cfg.variants.clear();
                for (const auto& item : split_list(v))
                    cfg.variants.push_back(parse_estimator(item, e.line));
            } else if (k == "comparator_iterations") {
                cfg.comparator_iterations = parse_u64(v, e.line);
            } else if (k == "seed") {
                cfg.seed = parse_u64(v, e.line);
            } else if (k == "snapshot_every") {
                cfg.snapshot_every = parse_u64(v, e.line);
            } else if (k == "dump_trajectories") {
                cfg.dump_trajectories = parse_u64(v, e.line);
            } else throw ConfigError(e.line, "unknown [solver] key '" + k + "'");
        } else if (e.section == "output") {
            if (k == "dir") cfg.out_dir = v;
            else if (k == "rho_steps") {
                cfg.rho_steps.clear();
                for (const auto& item : split_list(v))
                    cfg.rho_steps.push_back(parse_u64(item, e.line));
            } else throw ConfigError(e.line, "unknown [output] key '" + k + "'");
        }
    }

    if (!saw_mode) throw ConfigError(0, "missing required top-level key 'mode'");
    if (!saw_objective_section || !saw_objective_key)
        throw ConfigError(0, "missing [objective] block with an 'objective' key");

    if (alpha_word == "constant") cfg.exploration = ExplorationSchedule::constant_over_horizon();
    else if (alpha_word == "decaying" || (alpha_word.empty() && !alpha_fixed))
        cfg.exploration = ExplorationSchedule::decaying();
    else {
        if (!(*alpha_fixed > 0.0 && *alpha_fixed < 0.5))
            throw ConfigError(alpha_line, "alpha = " + std::to_string(*alpha_fixed) +
                                              " outside the exploration range (0, 1/2)");
        cfg.exploration = ExplorationSchedule::fixed(*alpha_fixed);
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file: " + path);
    return parse_config(in);
}

void ExperimentConfig::validate() const {
    if (grid_side < 5 || grid_side % 2 == 0)
        throw ConfigError(0, "grid_side must be odd and >= 5");
    if (horizon < 1) throw ConfigError(0, "horizon must be >= 1");
    if (noise_probs) {
        double total = 0.0;
        for (double p : *noise_probs) {
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(0, "noise_probs entries must be in [0,1]");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) throw ConfigError(0, "noise_probs must sum to 1");
    } else if (!(noise_up_prob >= 0.0 && noise_up_prob < 1.0)) {
        throw ConfigError(0, "noise_up_prob must be in [0, 1)");
    }
    const Index num_states = grid_side * grid_side;
    if (objective == ObjectiveKind::multi) {
        if (targets.empty()) throw ConfigError(0, "multi objective requires targets");
        for (Index t : targets)
            if (t >= num_states) throw ConfigError(0, "target state out of range");
    }
    if (objective == ObjectiveKind::linear && reward_file.empty())
        throw ConfigError(0, "linear objective requires reward_file");
    if (tau && !(*tau > 0.0)) throw ConfigError(0, "tau must be > 0");
    if (mode == Mode::offline) {
        if (iterations < 1) throw ConfigError(0, "iterations must be >= 1");
        for (Index n : rho_steps)
            if (n > horizon) throw ConfigError(0, "rho_steps entry exceeds the horizon");
    } else {
        if (episodes < 1) throw ConfigError(0, "episodes must be >= 1");
        if (agents < 1) throw ConfigError(0, "agents must be >= 1");
        if (comparator_iterations < 1) throw ConfigError(0, "comparator_iterations must be >= 1");
        for (Index t = 1; t <= episodes; ++t) {
            const double a = exploration.alpha(t, episodes);
            if (!(a > 0.0 && a < 0.5))
                throw ConfigError(0, "alpha_" + std::to_string(t) +
                                         " outside the exploration range (0, 1/2)");
        }
    }
}

} // namespace curl
