#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "tnsrank/cuts.hpp"
#include "tnsrank/hackbusch.hpp"
#include "tnsrank/numeric.hpp"
#include "tnsrank/tns_model.hpp"
#include "tnsrank/tree.hpp"

namespace tnsrank {

using Json = nlohmann::ordered_json;

/// Model file: {"tree": "<tree text>", "f": <n> | {"<edge key>": n, ...},
///              "dims": <n> | {"<leaf>": n, ...}}
/// Omitted dims default to the constant value of f; that requires a scalar
/// (or constant) f.
TnsModel model_from_json(const nlohmann::json& doc);
TnsModel load_model_file(const std::string& path);
Json model_to_json(const TnsModel& model);

/// Inline tree text when the argument starts with '(', otherwise a file path.
Tree load_tree_argument(const std::string& argument);

/// Numbers that fit in 64 bits are emitted as JSON numbers, larger ones as
/// decimal strings.
Json big_to_json(const BigNat& value);
Json cut_to_json(const Cut& cut);
Json leafset_to_json(const LeafSet& set);
Json verdict_to_json(const Verdict& verdict);
Json comparison_to_json(const ComparisonReport& report);

std::string read_text_file(const std::string& path);

}  // namespace tnsrank
