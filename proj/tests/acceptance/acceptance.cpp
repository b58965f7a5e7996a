// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cli_cases.hpp"
#include "tnsrank/cuts.hpp"
#include "tnsrank/hackbusch.hpp"
#include "tnsrank/json_io.hpp"
#include "tnsrank/rank_oracle.hpp"
#include "tnsrank/tns_model.hpp"
#include "tree_enum.hpp"

using namespace tnsrank;
namespace tt = tnsrank::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first counterexample; later ones only bump the count.
class Checker {
 public:
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = describe();
  }
  void note(std::string text) { note_ = std::move(text); }
  Outcome outcome() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failures_) s << ", " << failures_ << " failed; first: " << first_;
    if (!note_.empty()) s << "; " << note_;
    return {failures_ == 0 && checks_ > 0, s.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
  std::string note_;
};

// Criterion 7 runs on every tensor produced by criteria 4-6.
Checker g_transpose;
std::size_t g_transpose_tensors = 0;

void check_transpose(const DenseTensor& t) {
  const int n = t.order();
  std::vector<LeafSet> subsets;
  if (n <= 6) {
    subsets = tt::all_subsets(n);
  } else {
    std::mt19937_64 rng(g_transpose_tensors);
    for (int j = 0; j < 16; ++j) subsets.push_back(tt::random_subset(n, rng));
  }
  const auto id = g_transpose_tensors++;
  for (const auto& a : subsets) {
    auto left = flattening_rank(t, a), right = flattening_rank(t, a.complement(n));
    g_transpose.expect(left == right, [&] { return "tensor " + std::to_string(id) + " A={" + a.to_string() + "}"; });
  }
}

std::vector<std::pair<Tree, std::vector<LeafSet>>> cut_corpus() {
  std::vector<std::pair<Tree, std::vector<LeafSet>>> corpus;
  corpus.emplace_back(Tree::parse("(1,2)"), tt::all_subsets(2));
  for (int n = 3; n <= 7; ++n) {
    auto subsets = tt::all_subsets(n);
    for (auto& t : tt::all_labelled_trees(n)) corpus.emplace_back(std::move(t), subsets);
  }
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> leaves(8, 12);
  for (int i = 0; i < 200; ++i) {
    auto t = tt::random_tree(leaves(rng), rng);
    std::vector<LeafSet> subsets;
    for (int j = 0; j < 50; ++j) subsets.push_back(tt::random_subset(t.leaf_count(), rng));
    corpus.emplace_back(std::move(t), std::move(subsets));
  }
  return corpus;
}

std::string describe(const Tree& t, const LeafSet& a) { return t.serialize() + " A={" + a.to_string() + "}"; }

Outcome criterion1_and_2(Outcome& second) {
  Checker dp, prop;
  std::size_t instances = 0;
  for (const auto& [t, subsets] : cut_corpus()) {
    for (const auto& a : subsets) {
      ++instances;
      auto mono = min_mono_cut(t, a);
      auto brute = brute_force_min_mono(t, a);
      dp.expect(mono.size && *mono.size == brute && verify_mono_cut(t, a, mono.witness), [&] {
        return describe(t, a) + " dp=" + std::to_string(mono.size.value_or(999)) + " brute=" + std::to_string(brute);
      });
      auto colour = max_colour_cut(t, a);
      const bool bichromatic = !a.empty() && a.size() < static_cast<std::size_t>(t.leaf_count());
      bool ok = bichromatic ? colour.size && *mono.size == *colour.size + 1 && verify_colour_cut(t, a, colour.witness)
                            : *mono.size == 0 && !colour.size;
      prop.expect(ok, [&] { return describe(t, a); });
    }
  }
  dp.note(std::to_string(instances) + " (tree, subset) instances");
  prop.note(std::to_string(instances) + " (tree, subset) instances");
  second = prop.outcome();
  return dp.outcome();
}

Outcome criterion3() {
  Checker c;
  auto t = Tree::parse("((((1,2),3),((4,5),6)),(((7,8),9),((10,11),12)))");
  LeafSet a({1, 4, 8, 9, 11, 12});
  auto mono = min_mono_cut(t, a);
  auto colour = max_colour_cut(t, a);
  c.expect(mono.size == 5u, [&] { return "minmono " + std::to_string(mono.size.value_or(0)); });
  c.expect(colour.size == 4u, [&] { return "colour " + std::to_string(colour.size.value_or(0)); });
  c.expect(verify_mono_cut(t, a, mono.witness), [] { return std::string("mono witness rejected"); });
  c.expect(verify_colour_cut(t, a, colour.witness), [] { return std::string("colour witness rejected"); });
  return c.outcome();
}

Outcome criterion4() {
  Checker c;
  std::size_t instances = 0, retries = 0;
  const PrimeField field;
  for (std::uint64_t r : {2u, 3u}) {
    for (int n = 2; n <= 6; ++n) {
      auto trees = n == 2 ? std::vector<Tree>{Tree::parse("(1,2)")} : tt::all_labelled_trees(n);
      auto subsets = tt::all_subsets(n);
      for (const auto& t : trees) {
        auto model = TnsModel::constant(t, r);
        // Sample once per tree, reuse for every subset.
        std::vector<DenseTensor> samples;
        for (std::uint64_t s = 0; s < 3; ++s) {
          samples.push_back(sample_tns_tensor(model, s, field));
          check_transpose(samples.back());
        }
        for (const auto& a : subsets) {
          ++instances;
          std::size_t oracle = 0;
          for (const auto& s : samples) oracle = std::max(oracle, flattening_rank(s, a));
          const auto expected = big_pow(r, *min_mono_cut(t, a).size);
          if (BigNat(oracle) != expected) {
            ++retries;
            oracle = estimate_generic_rank(model, a, 3, 1000003, field);
          }
          c.expect(BigNat(oracle) == expected, [&] {
            return describe(t, a) + " r=" + std::to_string(r) + " oracle=" + std::to_string(oracle);
          });
        }
      }
    }
  }
  c.note(std::to_string(instances) + " instances, " + std::to_string(retries) + " reseeded");
  return c.outcome();
}

TnsModel random_model(std::mt19937_64& rng, int min_leaves, int max_leaves) {
  std::uniform_int_distribution<int> leaves(min_leaves, max_leaves);
  std::uniform_int_distribution<std::uint64_t> fv(1, 4), dv(2, 4);
  auto t = tt::random_tree(leaves(rng), rng);
  EdgeFunction f;
  for (const auto& id : t.edge_ids()) f.set(t, id, fv(rng));
  std::vector<std::uint64_t> dims(static_cast<std::size_t>(t.leaf_count()));
  for (auto& d : dims) d = dv(rng);
  return TnsModel(t, f, dims);
}

std::uint64_t dims_product(const TnsModel& m) {
  std::uint64_t p = 1;
  for (auto d : m.dims()) p *= d;
  return p;
}

Outcome criterion5() {
  Checker c;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto m = random_model(rng, 2, 8);
    auto a = tt::random_subset(m.tree().leaf_count(), rng);
    auto sample = sample_tns_tensor(m, static_cast<std::uint64_t>(i));
    auto rank = flattening_rank(sample, a);
    auto predicted = predict_rank(m, a).value;
    c.expect(BigNat(rank) <= predicted, [&] {
      return describe(m.tree(), a) + " rank=" + std::to_string(rank) + " predicted=" + predicted.str();
    });
    check_transpose(sample);
  }
  return c.outcome();
}

Outcome criterion6() {
  Checker c;
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    // Keep the product tensor under a few hundred thousand entries.
    TnsModel m1 = random_model(rng, 2, 4), m2 = random_model(rng, 2, 4);
    while (dims_product(m1) * dims_product(m2) > (1u << 18)) m2 = random_model(rng, 2, 3);
    auto t1 = sample_tns_tensor(m1, 2 * static_cast<std::uint64_t>(i));
    auto t2 = sample_tns_tensor(m2, 2 * static_cast<std::uint64_t>(i) + 1);
    auto product = kron(t1, t2);
    const int n1 = t1.order();
    for (int j = 0; j < 4; ++j) {
      auto a1 = tt::random_subset(n1, rng);
      auto a2 = tt::random_subset(t2.order(), rng);
      auto r1 = flattening_rank(t1, a1), r2 = flattening_rank(t2, a2);
      auto r = flattening_rank(product, a1.united(a2.shifted(n1)));
      c.expect(r == r1 * r2, [&] {
        return "pair " + std::to_string(i) + ": " + std::to_string(r) + " != " + std::to_string(r1) + "*" +
               std::to_string(r2);
      });
    }
    check_transpose(t1);
    check_transpose(t2);
    check_transpose(product);
  }
  return c.outcome();
}

Outcome criterion7() {
  g_transpose.note(std::to_string(g_transpose_tensors) + " tensors from criteria 4-6");
  return g_transpose.outcome();
}

Outcome criterion8() {
  Checker c;
  for (int n = 2; n <= 22; ++n) {
    const std::size_t expected = n <= 5 ? 1 : n <= 21 ? 2 : 3;
    auto k = tt_exponent(Tree::almost_perfect_binary(n)).k;
    c.expect(k == expected, [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k); });
  }
  return c.outcome();
}

Outcome criterion9() {
  Checker c;
  for (int n = 4; n <= 7; ++n) {
    auto t = Tree::almost_perfect_binary(n);
    auto scan = min_exponent_over_permutations(t, PermutationMode::exhaustive);
    auto natural = tt_exponent(t).k;
    c.expect(scan.k_min == natural, [&] {
      return "n=" + std::to_string(n) + " k_min=" + std::to_string(scan.k_min) + " natural=" + std::to_string(natural);
    });
  }
  return c.outcome();
}

Outcome criterion10() {
  Checker c;
  std::vector<Tree> trees;
  for (int n = 4; n <= 10; ++n)
    for (auto& t : tt::all_shapes(n)) trees.push_back(std::move(t));
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> leaves(11, 16);
  for (int i = 0; i < 100; ++i) trees.push_back(tt::random_tree(leaves(rng), rng));
  std::size_t oracle_checks = 0;
  for (const auto& t : trees) {
    const int n = t.leaf_count();
    auto a = construct_hard_subset(t);
    auto size = *min_mono_cut(t, a).size;
    c.expect(size >= static_cast<std::size_t>(n / 2), [&] { return describe(t, a) + " minmono=" + std::to_string(size); });
    if (n <= 8) {
      ++oracle_checks;
      auto oracle = estimate_generic_rank(TnsModel::constant(t, 2), a, 3, 0);
      c.expect(BigNat(oracle) == big_pow(2, size), [&] { return describe(t, a) + " oracle=" + std::to_string(oracle); });
    }
  }
  c.note(std::to_string(trees.size()) + " trees, " + std::to_string(oracle_checks) + " oracle checks");
  return c.outcome();
}

Outcome criterion11() {
  Checker c;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto m = random_model(rng, 2, 7);
    auto opt = optimalize(m);
    c.expect(optimalize(opt) == opt, [&] { return "not idempotent: " + model_to_json(m).dump(); });
    bool smaller = true;
    for (const auto& [edge, value] : opt.f().values()) smaller = smaller && value <= m.f().at(edge);
    c.expect(smaller, [&] { return "not pointwise smaller: " + model_to_json(m).dump(); });
    const auto seed = static_cast<std::uint64_t>(i);
    auto from_original = sample_tns_tensor(m, seed);
    auto from_optimal = sample_tns_tensor(opt, seed);
    c.expect(check_membership(from_original, opt), [&] { return "TNS(f) sample outside TNS(f'): " + model_to_json(m).dump(); });
    c.expect(check_membership(from_optimal, m), [&] { return "TNS(f') sample outside TNS(f): " + model_to_json(m).dump(); });
  }
  return c.outcome();
}

std::string run_binary(const std::vector<std::string>& args, int& code) {
  std::string command = TNSRANK_CLI_PATH;
  for (const auto& a : args) command += " '" + tt::expand(a) + "'";
  command += " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    code = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buffer{};
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), got);
  int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Outcome criterion12() {
  Checker c;
  for (const auto& k : tt::cli_cases()) {
    std::string golden;
    try {
      golden = read_text_file(std::string(TNSRANK_GOLDEN_DIR) + "/" + k.name + ".json");
    } catch (const std::exception&) {
      c.expect(false, [&] { return k.name + ": golden file missing"; });
      continue;
    }
    for (int repeat = 0; repeat < 2; ++repeat) {
      int code = 0;
      auto out = run_binary(k.args, code);
      c.expect(code == 0 && out == golden, [&] { return k.name + ": output differs (exit " + std::to_string(code) + ")"; });
    }
  }
  return c.outcome();
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  Outcome second;
  const std::vector<Row> rows{
      {1, "cut DP matches brute force", [&] { return criterion1_and_2(second); }},
      {2, "|M| = |C| + 1", [&] { return second; }},
      {3, "12-leaf example: minmono 5, colour 4", criterion3},
      {4, "generic rank equals r^minmono (r = 2, 3; n <= 6)", criterion4},
      {5, "prediction bounds sampled ranks", criterion5},
      {6, "Kronecker multiplicativity", criterion6},
      {7, "transpose symmetry", criterion7},
      {8, "almost perfect binary thresholds", criterion8},
      {9, "natural leaf order is optimal (n = 4..7)", criterion9},
      {10, "hard subset: minmono >= floor(n/2), rank 2^minmono", criterion10},
      {11, "optimalize: idempotent, pointwise smaller, same model", criterion11},
      {12, "CLI golden outputs", criterion12},
  };
  int failed = 0;
  for (const auto& row : rows) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = row.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %2d: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", row.id, row.title, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(rows.size()) - failed, rows.size());
  return failed == 0 ? 0 : 1;
}
