#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "sentirec/classify.hpp"
#include "sentirec/errors.hpp"
#include "sentirec/rng.hpp"

namespace sentirec {

double gini_impurity(std::span<const int> labels) {
  if (labels.empty()) return 0.0;
  double n1 = 0.0;
  for (int y : labels) n1 += y;
  const double n = static_cast<double>(labels.size());
  const double p1 = n1 / n;
  const double p0 = 1.0 - p1;
  return 1.0 - (p0 * p0 + p1 * p1);
}

int DecisionTree::predict(const SparseVector& x) const {
  std::size_t node = 0;
  while (!nodes[node].is_leaf) {
    const TreeNode& n = nodes[node];
    node = x.value_at(n.feature) < n.threshold ? static_cast<std::size_t>(n.left)
                                               : static_cast<std::size_t>(n.right);
  }
  return nodes[node].label;
}

int RandomForestModel::predict(const SparseVector& x) const {
  if (!trained()) throw UsageError("random forest model is not trained");
  std::size_t votes1 = 0;
  for (const auto& tree : trees) votes1 += tree.predict(x);
  return 2 * votes1 >= trees.size() ? 1 : 0;  // tie -> class 1
}

namespace {

struct TreeBuilder {
  std::span<const LabeledVector> data;
  std::size_t n_features;
  int max_depth;
  int min_samples_split;
  std::mt19937_64 rng;

  std::vector<std::uint32_t> samples;       // indices into data, reordered in place
  std::vector<std::uint32_t> feature_pool;  // persistent pool for feature sampling
  std::vector<TreeNode> nodes;

  // Scratch for split evaluation.
  std::vector<std::pair<double, int>> gathered;

  struct Split {
    bool found = false;
    std::uint32_t feature = 0;
    double threshold = 0.0;
    double gini = std::numeric_limits<double>::infinity();
  };

  int majority_label(std::size_t lo, std::size_t hi) const {
    std::size_t ones = 0;
    for (std::size_t i = lo; i < hi; ++i) ones += data[samples[i]].second;
    const std::size_t n = hi - lo;
    return 2 * ones >= n ? 1 : 0;  // tie -> class 1
  }

  bool is_pure(std::size_t lo, std::size_t hi) const {
    const int first = data[samples[lo]].second;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      if (data[samples[i]].second != first) return false;
    }
    return true;
  }

  // Best (feature, threshold) among sqrt(V) sampled features, minimizing
  // weighted Gini over midpoints between consecutive distinct values.
  // Only strictly better candidates replace the incumbent, and features and
  // midpoints are visited in a seed-determined order, so the choice is
  // deterministic.
  Split find_split(std::size_t lo, std::size_t hi) {
    const std::size_t k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n_features))));
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t r = j + bounded(rng, n_features - j);
      std::swap(feature_pool[j], feature_pool[r]);
    }

    Split best;
    const double m = static_cast<double>(hi - lo);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t feature = feature_pool[j];
      gathered.clear();
      double total_ones = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        const auto& [x, y] = data[samples[i]];
        gathered.emplace_back(x.value_at(feature), y);
        total_ones += y;
      }
      std::sort(gathered.begin(), gathered.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      double left_n = 0.0, left_ones = 0.0;
      for (std::size_t i = 0; i + 1 < gathered.size(); ++i) {
        left_n += 1.0;
        left_ones += gathered[i].second;
        if (gathered[i].first == gathered[i + 1].first) continue;
        const double mid = 0.5 * (gathered[i].first + gathered[i + 1].first);
        if (!(gathered[i].first < mid && mid < gathered[i + 1].first)) continue;
        const double right_n = m - left_n;
        const double right_ones = total_ones - left_ones;
        const double pl = left_ones / left_n;
        const double pr = right_ones / right_n;
        const double gini_l = 2.0 * pl * (1.0 - pl);
        const double gini_r = 2.0 * pr * (1.0 - pr);
        const double weighted = (left_n * gini_l + right_n * gini_r) / m;
        if (weighted < best.gini) {
          best.found = true;
          best.feature = feature;
          best.threshold = mid;
          best.gini = weighted;
        }
      }
    }
    return best;
  }

  std::int32_t build(std::size_t lo, std::size_t hi, int depth) {
    const std::int32_t index = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();

    const std::size_t n = hi - lo;
    if (n < static_cast<std::size_t>(min_samples_split) || depth >= max_depth ||
        is_pure(lo, hi)) {
      nodes[index].is_leaf = true;
      nodes[index].label = majority_label(lo, hi);
      return index;
    }
    const Split split = find_split(lo, hi);
    if (!split.found) {
      nodes[index].is_leaf = true;
      nodes[index].label = majority_label(lo, hi);
      return index;
    }

    auto mid = std::partition(samples.begin() + static_cast<std::ptrdiff_t>(lo),
                              samples.begin() + static_cast<std::ptrdiff_t>(hi),
                              [&](std::uint32_t s) {
                                return data[s].first.value_at(split.feature) <
                                       split.threshold;
                              });
    const std::size_t cut =
        static_cast<std::size_t>(mid - samples.begin());

    nodes[index].is_leaf = false;
    nodes[index].label = 0;
    nodes[index].feature = split.feature;
    nodes[index].threshold = split.threshold;
    const std::int32_t left = build(lo, cut, depth + 1);
    const std::int32_t right = build(cut, hi, depth + 1);
    nodes[index].left = left;
    nodes[index].right = right;
    return index;
  }
};

DecisionTree train_tree(std::span<const LabeledVector> data, const TrainConfig& cfg,
                        std::size_t n_features, std::uint64_t tree_seed) {
  TreeBuilder b;
  b.data = data;
  b.n_features = n_features;
  b.max_depth = cfg.max_depth;
  b.min_samples_split = cfg.min_samples_split;
  b.rng.seed(tree_seed);

  const std::size_t n = data.size();
  b.samples.resize(n);
  if (cfg.bootstrap) {
    for (std::size_t i = 0; i < n; ++i) {
      b.samples[i] = static_cast<std::uint32_t>(bounded(b.rng, n));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) b.samples[i] = static_cast<std::uint32_t>(i);
  }
  b.feature_pool.resize(n_features);
  for (std::size_t i = 0; i < n_features; ++i) {
    b.feature_pool[i] = static_cast<std::uint32_t>(i);
  }

  b.build(0, n, 0);
  DecisionTree tree;
  tree.nodes = std::move(b.nodes);
  return tree;
}

}  // namespace

RandomForestModel rf_train(std::span<const LabeledVector> data, const TrainConfig& cfg,
                           const Vocabulary& vocab, int n_threads) {
  cfg.validate();
  if (vocab.empty()) throw UsageError("rf_train: vocabulary is empty");
  if (n_threads < 1) throw UsageError("rf_train: n_threads must be >= 1");
  bool has0 = false, has1 = false;
  for (const auto& [x, y] : data) {
    if (y == 0) has0 = true;
    else if (y == 1) has1 = true;
    else throw DataError("rf_train: labels must be 0 or 1");
  }
  if (!has0 || !has1)
    throw DataError("rf_train: training data must contain both classes");

  RandomForestModel model;
  model.vocab = vocab;
  model.config = cfg;
  model.config.kind = ModelKind::Rf;
  model.trees.resize(static_cast<std::size_t>(cfg.n_trees));

  // Independent per-tree streams: the result is identical for any thread
  // count because tree t only depends on (cfg.seed, t).
  auto tree_seed = [&](std::size_t t) {
    return splitmix64(cfg.seed + 0x9E3779B97F4A7C15ULL * (t + 1));
  };

  const std::size_t n_trees = model.trees.size();
  if (n_threads == 1) {
    for (std::size_t t = 0; t < n_trees; ++t) {
      model.trees[t] = train_tree(data, cfg, vocab.size(), tree_seed(t));
    }
  } else {
    const std::size_t workers = std::min<std::size_t>(n_threads, n_trees);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < n_trees; t += workers) {
          model.trees[t] = train_tree(data, cfg, vocab.size(), tree_seed(t));
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return model;
}

}  // namespace sentirec
