#include <cmath>

#include "sentirec/classify.hpp"
#include "sentirec/errors.hpp"

namespace sentirec {

int NaiveBayesModel::predict(const SparseVector& x) const {
  if (!trained()) throw UsageError("naive Bayes model is not trained");
  double score0 = log_prior[0];
  double score1 = log_prior[1];
  for (const auto& [i, count] : x.entries) {
    score0 += count * log_likelihood[0][i];
    score1 += count * log_likelihood[1][i];
  }
  return score1 >= score0 ? 1 : 0;  // tie -> class 1
}

NaiveBayesModel mnb_train(std::span<const LabeledVector> data, const TrainConfig& cfg,
                          const Vocabulary& vocab) {
  cfg.validate();
  if (cfg.alpha <= 0.0) throw UsageError("mnb_train: alpha must be > 0");
  if (vocab.empty()) throw UsageError("mnb_train: vocabulary is empty");

  const std::size_t v = vocab.size();
  std::array<std::vector<double>, 2> term_count = {std::vector<double>(v, 0.0),
                                                   std::vector<double>(v, 0.0)};
  std::array<double, 2> class_docs = {0.0, 0.0};
  std::array<double, 2> total_count = {0.0, 0.0};
  for (const auto& [x, y] : data) {
    if (y != 0 && y != 1) throw DataError("mnb_train: labels must be 0 or 1");
    class_docs[y] += 1.0;
    for (const auto& [i, count] : x.entries) {
      if (count < 0.0) throw DataError("mnb_train: count vectors must be non-negative");
      term_count[y][i] += count;
      total_count[y] += count;
    }
  }
  if (class_docs[0] == 0.0 || class_docs[1] == 0.0) {
    throw DataError("mnb_train: training data must contain both classes");
  }

  NaiveBayesModel model;
  model.alpha = cfg.alpha;
  model.vocab = vocab;
  model.config = cfg;
  model.config.kind = ModelKind::Mnb;
  const double n = class_docs[0] + class_docs[1];
  for (int c = 0; c < 2; ++c) {
    model.log_prior[c] = std::log(class_docs[c] / n);
    model.log_likelihood[c].resize(v);
    const double denom = total_count[c] + cfg.alpha * static_cast<double>(v);
    for (std::size_t t = 0; t < v; ++t) {
      model.log_likelihood[c][t] = std::log((term_count[c][t] + cfg.alpha) / denom);
    }
  }
  return model;
}

}  // namespace sentirec
