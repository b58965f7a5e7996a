#include "tnsrank/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "tnsrank/errors.hpp"

namespace tnsrank {

namespace {

std::uint64_t positive(const nlohmann::json& value, const std::string& what) {
  if (!value.is_number_integer()) throw InputError(what + " must be an integer");
  if (value.is_number_unsigned()) {
    auto v = value.get<std::uint64_t>();
    if (v == 0) throw InputError(what + " must be >= 1");
    return v;
  }
  auto v = value.get<std::int64_t>();
  if (v < 1) throw InputError(what + " must be >= 1");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Tree load_tree_argument(const std::string& argument) {
  auto start = argument.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && argument[start] == '(') return Tree::parse(argument);
  return Tree::parse(read_text_file(argument));
}

TnsModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("model must be a JSON object");
  if (!doc.contains("tree") || !doc["tree"].is_string()) throw InputError("model needs a string field 'tree'");
  Tree tree = Tree::parse(doc["tree"].get<std::string>());
  if (!doc.contains("f")) throw InputError("model needs a field 'f'");

  const auto& fdoc = doc["f"];
  EdgeFunction f;
  if (fdoc.is_object()) {
    for (const auto& [key, value] : fdoc.items()) {
      f.set(tree, EdgeId::parse(key), positive(value, "f[" + key + "]"));
    }
  } else {
    f = EdgeFunction::constant(tree, positive(fdoc, "f"));
  }
  f.on_edges(tree);

  const auto n = static_cast<std::size_t>(tree.leaf_count());
  std::vector<std::uint64_t> dims;
  if (!doc.contains("dims")) {
    auto r = f.constant_value();
    if (!r) throw InputError("model without 'dims' needs a constant 'f'");
    dims.assign(n, *r);
  } else if (doc["dims"].is_object()) {
    dims.assign(n, 0);
    for (const auto& [key, value] : doc["dims"].items()) {
      std::size_t pos = 0;
      int label = 0;
      try {
        label = std::stoi(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || label < 1 || static_cast<std::size_t>(label) > n) {
        throw InputError("dims key '" + key + "' is not a leaf label");
      }
      dims[label - 1] = positive(value, "dims[" + key + "]");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dims[i] == 0) throw InputError("dims has no entry for leaf " + std::to_string(i + 1));
    }
  } else {
    dims.assign(n, positive(doc["dims"], "dims"));
  }
  return TnsModel(std::move(tree), std::move(f), std::move(dims));
}

TnsModel load_model_file(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

Json model_to_json(const TnsModel& model) {
  Json doc;
  doc["tree"] = model.tree().serialize();
  Json f = Json::object();
  for (const auto& id : model.tree().edge_ids()) f[id.key()] = model.f().at(id);
  doc["f"] = std::move(f);
  Json dims = Json::object();
  for (std::size_t i = 0; i < model.dims().size(); ++i) dims[std::to_string(i + 1)] = model.dims()[i];
  doc["dims"] = std::move(dims);
  return doc;
}

Json big_to_json(const BigNat& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return Json(value.convert_to<std::uint64_t>());
  }
  return Json(value.str());
}

Json cut_to_json(const Cut& cut) {
  Json out = Json::array();
  for (const auto& id : cut) out.push_back(id.key());
  return out;
}

Json leafset_to_json(const LeafSet& set) {
  Json out = Json::array();
  for (auto l : set.labels()) out.push_back(l);
  return out;
}

Json verdict_to_json(const Verdict& v) {
  const auto n = std::to_string(v.n);
  const auto r = std::to_string(v.r);
  Json out;
  out["n"] = v.n;
  out["r"] = v.r;
  out["k"] = v.k;
  out["witness_j"] = v.witness_j;
  out["inclusion_bond"] = big_to_json(v.inclusion_bond);
  out["exclusion_bond"] = big_to_json(v.exclusion_bond);
  out["inclusion"] = "HT(" + n + "," + r + ") ⊆ TT(" + n + "," + v.inclusion_bond.str() + ")";
  out["exclusion"] = "HT(" + n + "," + r + ") ⊄ TT(" + n + "," + v.exclusion_bond.str() + ")";
  return out;
}

Json comparison_to_json(const ComparisonReport& report) {
  Json out;
  out["necessary_condition_holds"] = report.necessary_condition_holds;
  out["note"] = "necessary condition only: passing every edge does not establish inclusion";
  out["failing_edge"] = report.failing_edge ? Json(report.failing_edge->key()) : Json(nullptr);
  Json edges = Json::array();
  for (const auto& row : report.edges) {
    Json e;
    e["edge"] = row.edge.key();
    e["g"] = row.bound;
    e["required"] = big_to_json(row.required);
    e["cut"] = cut_to_json(row.cut);
    e["pass"] = row.pass;
    edges.push_back(std::move(e));
  }
  out["edges"] = std::move(edges);
  return out;
}

}  // namespace tnsrank
