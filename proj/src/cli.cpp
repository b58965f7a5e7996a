#include "tnsrank/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tnsrank/cuts.hpp"
#include "tnsrank/errors.hpp"
#include "tnsrank/hackbusch.hpp"
#include "tnsrank/json_io.hpp"
#include "tnsrank/prime_field.hpp"
#include "tnsrank/rank_oracle.hpp"
#include "tnsrank/tns_model.hpp"

namespace tnsrank {

namespace {

struct Options {
  std::string tree;
  std::string model;
  std::string model2;
  std::string subset;
  std::optional<std::uint64_t> r;
  std::size_t trials = 3;
  std::size_t perm_trials = kDefaultPermutationTrials;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::string mode = "exhaustive";
  std::string dump;
  int n = 0;
  bool json = true;
};

// A model comes from --model, or is the constant model f == r, dims == r on --tree.
TnsModel resolve_model(const Options& o) {
  if (!o.model.empty()) return load_model_file(o.model);
  if (o.tree.empty() || !o.r) throw InputError("give --model, or --tree together with --r");
  if (*o.r < 1) throw InputError("--r must be >= 1");
  return TnsModel::constant(load_tree_argument(o.tree), *o.r);
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

Json cmd_minmono(const Options& o) {
  auto tree = load_tree_argument(o.tree);
  auto subset = LeafSet::parse(o.subset);
  auto mono = min_mono_cut(tree, subset);
  auto colour = max_colour_cut(tree, subset);
  Json out;
  out["tree"] = tree.serialize();
  out["subset"] = leafset_to_json(subset);
  out["size"] = *mono.size;
  out["witness"] = cut_to_json(mono.witness);
  out["colour_cut_size"] = colour.size ? Json(*colour.size) : Json(nullptr);
  out["colour_witness"] = cut_to_json(colour.witness);
  return out;
}

Json cmd_predict(const Options& o) {
  auto model = resolve_model(o);
  auto subset = LeafSet::parse(o.subset);
  auto p = predict_rank(model, subset);
  Json out;
  out["subset"] = leafset_to_json(subset);
  out["value"] = big_to_json(p.value);
  out["exact"] = p.exact;
  out["witness"] = cut_to_json(p.witness);
  return out;
}

Json cmd_verify(const Options& o) {
  auto model = resolve_model(o);
  auto subset = LeafSet::parse(o.subset);
  if (o.trials < 1) throw InputError("--trials must be >= 1");
  PrimeField field(o.prime);
  auto p = predict_rank(model, subset);
  auto oracle = estimate_generic_rank(model, subset, o.trials, o.seed, field);
  if (!o.dump.empty()) {
    std::ofstream file(o.dump);
    if (!file) throw InputError("cannot write dump file '" + o.dump + "'");
    dump_tensor(file, sample_tns_tensor(model, o.seed, field));
  }
  const bool agree = p.exact ? BigNat(oracle) == p.value : BigNat(oracle) <= p.value;
  Json out;
  out["subset"] = leafset_to_json(subset);
  out["predicted"] = big_to_json(p.value);
  out["exact"] = p.exact;
  out["oracle"] = oracle;
  out["agree"] = agree;
  out["trials"] = o.trials;
  out["prime"] = o.prime;
  out["seed"] = o.seed;
  return out;
}

Json cmd_hackbusch(const Options& o) {
  return verdict_to_json(hackbusch_verdict(o.n, o.r.value_or(2)));
}

Json cmd_compare(const Options& o) {
  if (o.model.empty() || o.model2.empty()) throw InputError("compare needs --model and --model2");
  return comparison_to_json(compare_models(load_model_file(o.model), load_model_file(o.model2)));
}

Json cmd_hardset(const Options& o) {
  auto tree = load_tree_argument(o.tree);
  const auto r = o.r.value_or(2);
  auto subset = construct_hard_subset(tree);
  auto size = *min_mono_cut(tree, subset).size;
  Json out;
  out["subset"] = leafset_to_json(subset);
  out["minmono"] = size;
  out["floor_half"] = tree.leaf_count() / 2;
  out["rank_bound"] = big_to_json(big_pow(r, size));
  return out;
}

Json cmd_optimalize(const Options& o) { return model_to_json(optimalize(resolve_model(o))); }

Json cmd_permscan(const Options& o) {
  auto tree = load_tree_argument(o.tree);
  PermutationMode mode;
  if (o.mode == "exhaustive") {
    mode = PermutationMode::exhaustive;
  } else if (o.mode == "sampled") {
    mode = PermutationMode::sampled;
  } else {
    throw InputError("--mode must be 'exhaustive' or 'sampled'");
  }
  auto scan = min_exponent_over_permutations(tree, mode, o.perm_trials, o.seed);
  auto natural = tt_exponent(tree);
  Json out;
  out["tree"] = tree.serialize();
  out["mode"] = o.mode;
  out["natural_k"] = natural.k;
  out["natural_witness_j"] = natural.witness_j;
  out["k_min"] = scan.k_min;
  Json perm = Json::array();
  for (auto l : scan.witness) perm.push_back(l);
  out["witness_permutation"] = std::move(perm);
  out["permutations_checked"] = scan.permutations_checked;
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flattening ranks, cuts and model comparison for tree tensor network states", "tnsrank"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_tree = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--tree", o.tree, "tree file, or inline tree text starting with '('");
    if (required) opt->required();
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "model JSON file");
    add_tree(sub, false);
    sub->add_option("--r", o.r, "constant bond for a --tree model (dims default to r)");
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json,!--no-json", o.json, "JSON output (default)"); };

  auto* minmono = app.add_subcommand("minmono", "minimal monochromatic and maximal colour cuts");
  add_tree(minmono, true);
  minmono->add_option("--subset", o.subset, "comma-separated leaf labels");

  auto* predict = app.add_subcommand("predict", "predicted flattening rank of a model");
  add_model(predict);
  predict->add_option("--subset", o.subset, "comma-separated leaf labels");

  auto* verify = app.add_subcommand("verify", "compare the prediction with the exact-rank oracle");
  add_model(verify);
  verify->add_option("--subset", o.subset, "comma-separated leaf labels");
  verify->add_option("--trials", o.trials, "random samples")->capture_default_str();
  verify->add_option("--prime", o.prime, "field prime")->capture_default_str();
  verify->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  verify->add_option("--dump", o.dump, "write the first sampled tensor to this file");

  auto* hack = app.add_subcommand("hackbusch", "TT exponent of the almost perfect binary tree");
  hack->add_option("--n", o.n, "leaf count")->required();
  hack->add_option("--r", o.r, "bond of the HT model (default 2)");

  auto* compare = app.add_subcommand("compare", "necessary condition for TNS(model) inside TNS(model2)");
  compare->add_option("--model", o.model, "first model JSON file")->required();
  compare->add_option("--model2", o.model2, "second model JSON file")->required();

  auto* hardset = app.add_subcommand("hardset", "leaf subset with large minimal monochromatic cut");
  add_tree(hardset, true);
  hardset->add_option("--r", o.r, "bond for the reported rank bound (default 2)");

  auto* opt = app.add_subcommand("optimalize", "reduce f to its optimal fixed point");
  add_model(opt);

  auto* permscan = app.add_subcommand("permscan", "minimum TT exponent over leaf relabellings");
  add_tree(permscan, true);
  permscan->add_option("--mode", o.mode, "exhaustive or sampled")->capture_default_str();
  permscan->add_option("--trials", o.perm_trials, "sampled permutations")->capture_default_str();
  permscan->add_option("--seed", o.seed, "generator seed")->capture_default_str();

  for (auto* sub : {minmono, predict, verify, hack, compare, hardset, opt, permscan}) add_json(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    Json doc;
    if (minmono->parsed()) doc = cmd_minmono(o);
    else if (predict->parsed()) doc = cmd_predict(o);
    else if (verify->parsed()) doc = cmd_verify(o);
    else if (hack->parsed()) doc = cmd_hackbusch(o);
    else if (compare->parsed()) doc = cmd_compare(o);
    else if (hardset->parsed()) doc = cmd_hardset(o);
    else if (opt->parsed()) doc = cmd_optimalize(o);
    else doc = cmd_permscan(o);
    if (!o.json) {
      // Compact single-line form.
      out << doc.dump() << '\n';
    } else {
      emit(out, doc);
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const InternalError& e) {
    err << "internal assertion: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
}

}  // namespace tnsrank
