/*
 * Copyright 2026 The creditrisk Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "creditrisk/model_io.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "creditrisk/errors.hpp"
#include "creditrisk/io.hpp"
#include "creditrisk/util.hpp"

namespace creditrisk {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

std::string rule_name(SplitRule r) {
  switch (r) {
    case SplitRule::kGini: return "gini";
    case SplitRule::kEntropy: return "entropy";
    case SplitRule::kMse: return "mse";
  }
  throw ConfigError("unknown split rule");
}

SplitRule rule_from_name(const std::string& s) {
  if (s == "gini") return SplitRule::kGini;
  if (s == "entropy") return SplitRule::kEntropy;
  if (s == "mse") return SplitRule::kMse;
  throw DataError("unknown split rule '" + s + "'");
}

json dump_d(double v) { return format_double(v); }

double load_d(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw DataError(ctx + ": expected decimal string");
  return parse_double(j.get<std::string>(), ctx);
}

json dump_d_vec(const std::vector<double>& v) {
  json arr = json::array();
  for (const double x : v) arr.push_back(format_double(x));
  return arr;
}

std::vector<double> load_d_vec(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw DataError(ctx + ": expected array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(load_d(j[i], ctx + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json dump_hp(const HyperParams& hp) {
  json j;
  j["max_depth"] = hp.max_depth;
  j["min_leaf"] = hp.min_leaf;
  j["criterion"] = rule_name(hp.criterion);
  j["n_trees"] = hp.n_trees;
  j["features_per_split"] = hp.features_per_split;
  j["bootstrap"] = hp.bootstrap;
  j["n_rounds"] = hp.n_rounds;
  j["learning_rate"] = dump_d(hp.learning_rate);
  j["base_depth"] = hp.base_depth;
  j["l2_penalty"] = dump_d(hp.l2_penalty);
  j["max_iters"] = hp.max_iters;
  j["step_size"] = dump_d(hp.step_size);
  j["laplace_alpha"] = dump_d(hp.laplace_alpha);
  j["n_bins"] = hp.n_bins;
  return j;
}

HyperParams load_hp(const json& j) {
  HyperParams hp;
  hp.max_depth = j.at("max_depth").get<int>();
  hp.min_leaf = j.at("min_leaf").get<int>();
  hp.criterion = rule_from_name(j.at("criterion").get<std::string>());
  hp.n_trees = j.at("n_trees").get<int>();
  hp.features_per_split = j.at("features_per_split").get<int>();
  hp.bootstrap = j.at("bootstrap").get<bool>();
  hp.n_rounds = j.at("n_rounds").get<int>();
  hp.learning_rate = load_d(j.at("learning_rate"), "learning_rate");
  hp.base_depth = j.at("base_depth").get<int>();
  hp.l2_penalty = load_d(j.at("l2_penalty"), "l2_penalty");
  hp.max_iters = j.at("max_iters").get<int>();
  hp.step_size = load_d(j.at("step_size"), "step_size");
  hp.laplace_alpha = load_d(j.at("laplace_alpha"), "laplace_alpha");
  hp.n_bins = j.at("n_bins").get<int>();
  return hp;
}

json dump_tree_node(const DecisionTree& t, std::int32_t id) {
  const TreeNode& n = t.nodes[static_cast<std::size_t>(id)];
  json j;
  if (n.feature < 0) {
    j["value"] = dump_d(n.value);
    return j;
  }
  j["feature"] = n.feature;
  j["threshold"] = dump_d(n.threshold);
  j["left"] = dump_tree_node(t, n.left);
  j["right"] = dump_tree_node(t, n.right);
  return j;
}

json dump_tree(const DecisionTree& t) {
  if (t.nodes.empty()) throw DataError("cannot serialize an empty tree");
  return dump_tree_node(t, 0);
}

std::int32_t load_tree_node(const json& j, DecisionTree& t,
                            const std::string& ctx) {
  const auto id = static_cast<std::int32_t>(t.nodes.size());
  t.nodes.emplace_back();
  if (j.contains("value")) {
    t.nodes[static_cast<std::size_t>(id)].value =
        load_d(j.at("value"), ctx + ".value");
    return id;
  }
  const int feature = j.at("feature").get<int>();
  if (feature < 0) throw DataError(ctx + ": negative split feature");
  const double threshold = load_d(j.at("threshold"), ctx + ".threshold");
  const std::int32_t left = load_tree_node(j.at("left"), t, ctx + ".left");
  const std::int32_t right = load_tree_node(j.at("right"), t, ctx + ".right");
  TreeNode& n = t.nodes[static_cast<std::size_t>(id)];
  n.feature = feature;
  n.threshold = threshold;
  n.left = left;
  n.right = right;
  return id;
}

DecisionTree load_tree(const json& j, const std::string& ctx) {
  DecisionTree t;
  load_tree_node(j, t, ctx);
  return t;
}

json dump_trees(const std::vector<DecisionTree>& trees) {
  json arr = json::array();
  for (const DecisionTree& t : trees) arr.push_back(dump_tree(t));
  return arr;
}

std::vector<DecisionTree> load_trees(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw DataError(ctx + ": expected array of trees");
  std::vector<DecisionTree> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(load_tree(j[i], ctx + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json dump_params(const TrainedModel& m) {
  json j;
  if (const auto* np = std::get_if<NaiveParams>(&m.params)) {
    j["l3_cols"] = np->l3_cols;
    j["l7_cols"] = np->l7_cols;
    return j;
  }
  if (const auto* mp = std::get_if<MnbParams>(&m.params)) {
    j["n_bins"] = mp->n_bins;
    j["laplace_alpha"] = dump_d(mp->laplace_alpha);
    json edges = json::array();
    for (const auto& e : mp->edges) edges.push_back(dump_d_vec(e));
    j["edges"] = std::move(edges);
    j["log_prior"] = json::array({dump_d(mp->log_prior[0]),
                                  dump_d(mp->log_prior[1])});
    j["log_theta"] = dump_d_vec(mp->log_theta);
    return j;
  }
  if (const auto* lp = std::get_if<LogisticParams>(&m.params)) {
    j["mean"] = dump_d_vec(lp->mean);
    j["scale"] = dump_d_vec(lp->scale);
    j["weights"] = dump_d_vec(lp->weights);
    j["intercept"] = dump_d(lp->intercept);
    return j;
  }
  if (const auto* tp = std::get_if<TreeModelParams>(&m.params)) {
    j["tree"] = dump_tree(tp->tree);
    return j;
  }
  if (const auto* fp = std::get_if<ForestParams>(&m.params)) {
    j["trees"] = dump_trees(fp->trees);
    return j;
  }
  if (const auto* ap = std::get_if<AdaParams>(&m.params)) {
    j["trees"] = dump_trees(ap->trees);
    j["alphas"] = dump_d_vec(ap->alphas);
    return j;
  }
  const auto& gp = std::get<GbParams>(m.params);
  j["f0"] = dump_d(gp.f0);
  j["learning_rate"] = dump_d(gp.learning_rate);
  j["trees"] = dump_trees(gp.trees);
  return j;
}

ModelParams load_params(Family family, const json& j, const std::string& ctx) {
  switch (family) {
    case Family::kNaive: {
      NaiveParams np;
      np.l3_cols = j.at("l3_cols").get<std::vector<std::int32_t>>();
      np.l7_cols = j.at("l7_cols").get<std::vector<std::int32_t>>();
      return np;
    }
    case Family::kMnb: {
      MnbParams mp;
      mp.n_bins = j.at("n_bins").get<int>();
      mp.laplace_alpha = load_d(j.at("laplace_alpha"), ctx + ".laplace_alpha");
      for (const auto& e : j.at("edges")) {
        mp.edges.push_back(load_d_vec(e, ctx + ".edges"));
      }
      mp.log_prior[0] = load_d(j.at("log_prior").at(0), ctx + ".log_prior");
      mp.log_prior[1] = load_d(j.at("log_prior").at(1), ctx + ".log_prior");
      mp.log_theta = load_d_vec(j.at("log_theta"), ctx + ".log_theta");
      return mp;
    }
    case Family::kLog: {
      LogisticParams lp;
      lp.mean = load_d_vec(j.at("mean"), ctx + ".mean");
      lp.scale = load_d_vec(j.at("scale"), ctx + ".scale");
      lp.weights = load_d_vec(j.at("weights"), ctx + ".weights");
      lp.intercept = load_d(j.at("intercept"), ctx + ".intercept");
      return lp;
    }
    case Family::kDt: {
      TreeModelParams tp;
      tp.tree = load_tree(j.at("tree"), ctx + ".tree");
      return tp;
    }
    case Family::kRf:
    case Family::kBag: {
      ForestParams fp;
      fp.trees = load_trees(j.at("trees"), ctx + ".trees");
      return fp;
    }
    case Family::kAda: {
      AdaParams ap;
      ap.trees = load_trees(j.at("trees"), ctx + ".trees");
      ap.alphas = load_d_vec(j.at("alphas"), ctx + ".alphas");
      if (ap.trees.size() != ap.alphas.size()) {
        throw DataError(ctx + ": trees/alphas length mismatch");
      }
      return ap;
    }
    case Family::kGb: {
      GbParams gp;
      gp.f0 = load_d(j.at("f0"), ctx + ".f0");
      gp.learning_rate = load_d(j.at("learning_rate"), ctx + ".learning_rate");
      gp.trees = load_trees(j.at("trees"), ctx + ".trees");
      return gp;
    }
  }
  throw DataError(ctx + ": unknown family");
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
  json j;
  j["version"] = kModelFormatVersion;
  j["family"] = family_name(model.family);
  j["hyperparameters"] = dump_hp(model.hp);
  j["feature_names"] = model.feature_names;
  j["train_seed"] = model.train_seed;
  j["parameters"] = dump_params(model);
  write_text_file(path, j.dump(2) + "\n");
}

TrainedModel load_model(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError(path + ": unsupported model format version " +
                      std::to_string(version));
    }
    const std::string fam_name = j.at("family").get<std::string>();
    const std::optional<Family> family = family_from_name(fam_name);
    if (!family) throw DataError(path + ": unknown family '" + fam_name + "'");
    TrainedModel m;
    m.family = *family;
    m.hp = load_hp(j.at("hyperparameters"));
    m.feature_names =
        j.at("feature_names").get<std::vector<std::string>>();
    m.train_seed = j.at("train_seed").get<std::uint64_t>();
    m.params = load_params(*family, j.at("parameters"), path);
    return m;
  } catch (const json::exception& e) {
    throw DataError(path + ": model field error: " + e.what());
  }
}

void save_comb(const CombModel& model, const std::string& manifest_path) {
  validate_comb(model);
  const std::filesystem::path mp(manifest_path);
  std::string stem = mp.stem().string();
  if (stem.empty()) stem = "comb";
  json j;
  j["version"] = kModelFormatVersion;
  j["kind"] = "vote_committee";
  j["vote_threshold"] = model.vote_threshold;
  json members = json::array();
  for (std::size_t i = 0; i < model.members.size(); ++i) {
    const std::string member_file =
        stem + ".member" + std::to_string(i) + ".json";
    save_model(model.members[i], (mp.parent_path() / member_file).string());
    members.push_back(member_file);
  }
  j["members"] = std::move(members);
  write_text_file(manifest_path, j.dump(2) + "\n");
}

CombModel load_comb(const std::string& manifest_path) {
  json j;
  try {
    j = json::parse(read_text_file(manifest_path));
  } catch (const json::exception& e) {
    throw DataError(manifest_path + ": invalid JSON: " + e.what());
  }
  CombModel model;
  try {
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw DataError(manifest_path + ": unsupported manifest version");
    }
    if (j.value("kind", std::string()) != "vote_committee") {
      throw DataError(manifest_path + ": not a committee manifest");
    }
    model.vote_threshold = j.at("vote_threshold").get<int>();
    const std::filesystem::path dir =
        std::filesystem::path(manifest_path).parent_path();
    for (const auto& member : j.at("members")) {
      model.members.push_back(
          load_model((dir / member.get<std::string>()).string()));
    }
  } catch (const json::exception& e) {
    throw DataError(manifest_path + ": manifest field error: " + e.what());
  }
  validate_comb(model);
  return model;
}

}  // namespace creditrisk
