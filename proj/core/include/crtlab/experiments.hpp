#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crtlab/rng.hpp"

namespace crtlab {

enum class CheckKind { p_value, max_deviation, min_fraction, exact };

struct Check {
    std::string label;
    CheckKind kind = CheckKind::p_value;
    double statistic = 0.0;
    double value = 0.0;      // p-value, deviation, fraction or mismatch count, per kind
    double threshold = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    std::string name;
    nlohmann::json parameters;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::optional<double> max_deviation;
    std::optional<double> fraction;
    double threshold = 0.0;
    bool pass = false;
    std::size_t replicate_count = 0;
    double wall_time = 0.0;
    std::vector<Check> checks;
    std::string notes;
    nlohmann::json details = nlohmann::json::object();
};

const char* to_string(CheckKind k) noexcept;
bool evaluate(const Check& c) noexcept;

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);
nlohmann::json default_config(const std::string& name);
// Merges `overrides` into the defaults and rejects unknown keys or wrong types.
nlohmann::json resolve_config(const std::string& name, const nlohmann::json& overrides);

ExperimentReport run_experiment(const std::string& name, const nlohmann::json& config, unsigned workers = 1);

nlohmann::json report_to_json(const ExperimentReport& r);
std::string report_csv_header();
std::string report_csv_line(const ExperimentReport& r);

}  // namespace crtlab
