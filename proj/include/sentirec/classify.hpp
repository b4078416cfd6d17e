#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sentirec/textfeat.hpp"

namespace sentirec {

enum class ModelKind { Lr, Mnb, Rf };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& s);  // throws UsageError

// A labeled training example: feature vector plus binary label.
using LabeledVector = std::pair<SparseVector, int>;

struct TrainConfig {
  ModelKind kind = ModelKind::Lr;
  std::uint64_t seed = 42;
  // logistic regression
  double learning_rate = 0.5;
  int epochs = 200;
  double l2_lambda = 1e-4;
  // multinomial naive Bayes
  double alpha = 1.0;
  // random forest
  int n_trees = 100;
  int max_depth = 40;
  int min_samples_split = 2;
  std::string max_features = "sqrt";
  bool bootstrap = true;  // test hook: disable resampling to make trees exact

  void validate() const;  // throws UsageError on nonpositive hyperparameters
};

// ---------------------------------------------------------------------------
// Logistic regression

struct LogisticModel {
  std::vector<double> weights;  // length = vocabulary size
  double bias = 0.0;
  Vocabulary vocab;
  TrainConfig config;
  std::vector<double> loss_history;  // entry 0 = initial loss; not serialized

  bool trained() const { return !vocab.empty(); }
  double predict_probability(const SparseVector& x) const;
  int predict(const SparseVector& x) const;  // probability >= 0.5 -> 1
};

// Numerically stable sigmoid, clamped into the open interval (0, 1).
double sigmoid(double z);

struct LrGradient {
  std::vector<double> weight_grad;
  double bias_grad = 0.0;
};

// L2-regularized binary cross-entropy loss and its analytic gradient.
// Exposed separately so the gradient can be checked against finite
// differences of the loss.
double lr_loss(const std::vector<double>& weights, double bias, double l2_lambda,
               std::span<const LabeledVector> batch);
LrGradient lr_gradient(const std::vector<double>& weights, double bias,
                       double l2_lambda, std::span<const LabeledVector> batch);

// Full-batch gradient descent from zero init, exactly cfg.epochs iterations.
// Inputs are expected to be TF-IDF vectors. Throws DataError when only one
// class is present and NumericError (naming the epoch) on non-finite loss.
LogisticModel lr_train(std::span<const LabeledVector> data, const TrainConfig& cfg,
                       const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Multinomial naive Bayes

struct NaiveBayesModel {
  std::array<double, 2> log_prior = {0.0, 0.0};
  std::array<std::vector<double>, 2> log_likelihood;  // per class, length V
  double alpha = 1.0;
  Vocabulary vocab;
  TrainConfig config;

  bool trained() const { return !vocab.empty(); }
  int predict(const SparseVector& x) const;  // posterior tie -> class 1
};

// Laplace-smoothed multinomial maximum likelihood over raw count vectors.
NaiveBayesModel mnb_train(std::span<const LabeledVector> data, const TrainConfig& cfg,
                          const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Random forest

struct TreeNode {
  // Internal node: feature/threshold with children; leaf: label only.
  bool is_leaf = true;
  int label = 1;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  std::int32_t left = -1;   // child for value < threshold
  std::int32_t right = -1;  // child for value >= threshold
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int predict(const SparseVector& x) const;
};

struct RandomForestModel {
  std::vector<DecisionTree> trees;
  Vocabulary vocab;
  TrainConfig config;

  bool trained() const { return !vocab.empty() && !trees.empty(); }
  int predict(const SparseVector& x) const;  // majority vote, tie -> class 1
};

// Gini impurity 1 - sum_c p_c^2 of a binary label multiset.
double gini_impurity(std::span<const int> labels);

// Seeded bootstrap + sqrt(V) feature sampling + exact midpoint splits.
// Per-tree RNG streams are derived from cfg.seed via splitmix64 mixed with
// the tree index, so training is bit-identical for any n_threads.
RandomForestModel rf_train(std::span<const LabeledVector> data, const TrainConfig& cfg,
                           const Vocabulary& vocab, int n_threads = 1);

// ---------------------------------------------------------------------------
// Shared prediction contract

using AnyModel = std::variant<LogisticModel, NaiveBayesModel, RandomForestModel>;

ModelKind model_kind(const AnyModel& model);
const Vocabulary& model_vocab(const AnyModel& model);
const TrainConfig& model_config(const AnyModel& model);

// Tokenizes and vectorizes with the model's own feature convention (raw
// counts for MNB, TF-IDF for LR/RF), then predicts a label in {0, 1}.
// Throws UsageError for a model that was never trained.
int predict_text(const AnyModel& model, std::string_view text);

// Trains the model selected by cfg.kind on raw token documents: builds the
// vocabulary (bounded by max_terms) and the per-kind feature vectors.
AnyModel train_model(const std::vector<std::vector<std::string>>& docs,
                     std::span<const int> labels, const TrainConfig& cfg,
                     std::size_t max_terms = 20000, int n_threads = 1);

}  // namespace sentirec
