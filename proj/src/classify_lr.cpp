#include <cmath>
#include <limits>

#include "sentirec/classify.hpp"
#include "sentirec/errors.hpp"

namespace sentirec {

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void require_both_classes(std::span<const LabeledVector> data, const char* who) {
  bool has0 = false, has1 = false;
  for (const auto& [x, y] : data) {
    if (y == 0) has0 = true;
    else if (y == 1) has1 = true;
    else throw DataError(std::string(who) + ": labels must be 0 or 1");
  }
  if (!has0 || !has1)
    throw DataError(std::string(who) + ": training data must contain both classes");
}

}  // namespace

double sigmoid(double z) {
  double p;
  if (z >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    p = e / (1.0 + e);
  }
  // Keep the output strictly inside (0, 1) even for |z| past the underflow
  // threshold of exp.
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  if (p < std::numeric_limits<double>::min()) p = std::numeric_limits<double>::min();
  if (p > hi) p = hi;
  return p;
}

double lr_loss(const std::vector<double>& weights, double bias, double l2_lambda,
               std::span<const LabeledVector> batch) {
  if (batch.empty()) throw UsageError("lr_loss: batch must be non-empty");
  double sum = 0.0;
  for (const auto& [x, y] : batch) {
    const double z = x.dot(weights) + bias;
    // -[y ln sigma(z) + (1-y) ln(1 - sigma(z))] via softplus.
    sum += y == 1 ? softplus(-z) : softplus(z);
  }
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return sum / static_cast<double>(batch.size()) + 0.5 * l2_lambda * reg;
}

LrGradient lr_gradient(const std::vector<double>& weights, double bias,
                       double l2_lambda, std::span<const LabeledVector> batch) {
  if (batch.empty()) throw UsageError("lr_gradient: batch must be non-empty");
  LrGradient g;
  g.weight_grad.assign(weights.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (const auto& [x, y] : batch) {
    const double z = x.dot(weights) + bias;
    const double residual = sigmoid(z) - static_cast<double>(y);
    for (const auto& [i, v] : x.entries) g.weight_grad[i] += residual * v * inv_n;
    g.bias_grad += residual * inv_n;
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    g.weight_grad[i] += l2_lambda * weights[i];
  }
  return g;
}

double LogisticModel::predict_probability(const SparseVector& x) const {
  if (!trained()) throw UsageError("logistic model is not trained");
  return sigmoid(x.dot(weights) + bias);
}

int LogisticModel::predict(const SparseVector& x) const {
  return predict_probability(x) >= 0.5 ? 1 : 0;
}

LogisticModel lr_train(std::span<const LabeledVector> data, const TrainConfig& cfg,
                       const Vocabulary& vocab) {
  cfg.validate();
  require_both_classes(data, "lr_train");
  if (vocab.empty()) throw UsageError("lr_train: vocabulary is empty");

  LogisticModel model;
  model.vocab = vocab;
  model.config = cfg;
  model.config.kind = ModelKind::Lr;
  model.weights.assign(vocab.size(), 0.0);
  model.bias = 0.0;
  model.loss_history.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
  model.loss_history.push_back(lr_loss(model.weights, model.bias, cfg.l2_lambda, data));

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const LrGradient g = lr_gradient(model.weights, model.bias, cfg.l2_lambda, data);
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
      model.weights[i] -= cfg.learning_rate * g.weight_grad[i];
    }
    model.bias -= cfg.learning_rate * g.bias_grad;
    const double loss = lr_loss(model.weights, model.bias, cfg.l2_lambda, data);
    if (!std::isfinite(loss)) {
      throw NumericError("lr_train: non-finite loss at epoch " + std::to_string(epoch));
    }
    model.loss_history.push_back(loss);
  }
  return model;
}

}  // namespace sentirec
