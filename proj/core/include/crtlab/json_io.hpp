#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "crtlab/line_breaking.hpp"
#include "crtlab/ptree.hpp"
#include "crtlab/recovery.hpp"
#include "crtlab/step_path.hpp"
#include "crtlab/theta.hpp"
#include "crtlab/trees.hpp"

namespace crtlab {

// {domain_end, drift, jumps: [[time, size], ...], kind}
nlohmann::json path_to_json(const StepPath& p);
StepPath path_from_json(const nlohmann::json& j);

// {atoms, tail_l2, nominal_alpha?}
nlohmann::json theta_to_json(const ThetaParam& t);
ThetaParam theta_from_json(const nlohmann::json& j);

// {k, parents: {label: parent_label}}, root parent null; {k, cemetery: true} for the cemetery
nlohmann::json labelled_to_json(const LabelledTree& t);
nlohmann::json labelled_to_json(const MaybeLabelled& t, std::size_t k);
LabelledTree labelled_from_json(const nlohmann::json& j);

// sorted Neveu words
nlohmann::json ordered_to_json(const OrderedTree& t);
OrderedTree ordered_from_json(const nlohmann::json& j);

// {theta, segments, attachments, colors, joins}
nlohmann::json line_broken_to_json(const LineBrokenTree& t);
LineBrokenTree line_broken_from_json(const nlohmann::json& j);

nlohmann::json ptree_to_json(const PTree& t);
PTree ptree_from_json(const nlohmann::json& j);

nlohmann::json census_to_json(const ShapeCensus& c);
void write_census_csv(std::ostream& os, const ShapeCensus& c);

void write_trajectory_csv(std::ostream& os, const Trajectory& t);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace crtlab
