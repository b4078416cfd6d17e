#include <cmath>

#include "sentirec/classify.hpp"
#include "sentirec/errors.hpp"

namespace sentirec {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Lr: return "lr";
    case ModelKind::Mnb: return "mnb";
    case ModelKind::Rf: return "rf";
  }
  throw UsageError("unknown model kind");
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "lr") return ModelKind::Lr;
  if (s == "mnb") return ModelKind::Mnb;
  if (s == "rf") return ModelKind::Rf;
  throw UsageError("unknown model kind '" + s + "' (valid kinds: lr, mnb, rf)");
}

void TrainConfig::validate() const {
  if (learning_rate <= 0.0) throw UsageError("learning_rate must be > 0");
  if (epochs < 1) throw UsageError("epochs must be >= 1");
  if (l2_lambda < 0.0) throw UsageError("l2_lambda must be >= 0");
  if (alpha <= 0.0) throw UsageError("alpha must be > 0");
  if (n_trees < 1) throw UsageError("n_trees must be >= 1");
  if (max_depth < 1) throw UsageError("max_depth must be >= 1");
  if (min_samples_split < 2) throw UsageError("min_samples_split must be >= 2");
  if (max_features != "sqrt") {
    throw UsageError("unsupported max_features rule '" + max_features + "'");
  }
}

ModelKind model_kind(const AnyModel& model) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogisticModel>) return ModelKind::Lr;
        else if constexpr (std::is_same_v<T, NaiveBayesModel>) return ModelKind::Mnb;
        else return ModelKind::Rf;
      },
      model);
}

const Vocabulary& model_vocab(const AnyModel& model) {
  return std::visit([](const auto& m) -> const Vocabulary& { return m.vocab; }, model);
}

const TrainConfig& model_config(const AnyModel& model) {
  return std::visit([](const auto& m) -> const TrainConfig& { return m.config; }, model);
}

int predict_text(const AnyModel& model, std::string_view text) {
  const Vocabulary& vocab = model_vocab(model);
  if (vocab.empty()) throw UsageError("model is not trained (empty vocabulary)");
  const std::vector<std::string> tokens = tokenize(text);
  return std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          return m.predict(count_vector(tokens, vocab));
        } else {
          return m.predict(tfidf_vector(tokens, vocab));
        }
      },
      model);
}

AnyModel train_model(const std::vector<std::vector<std::string>>& docs,
                     std::span<const int> labels, const TrainConfig& cfg,
                     std::size_t max_terms, int n_threads) {
  if (docs.size() != labels.size()) {
    throw UsageError("train_model: docs and labels must have the same length");
  }
  if (docs.empty()) throw DataError("train_model: no training documents");
  const Vocabulary vocab = build_vocab(docs, max_terms);

  std::vector<LabeledVector> data;
  data.reserve(docs.size());
  const bool counts = cfg.kind == ModelKind::Mnb;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    data.emplace_back(counts ? count_vector(docs[i], vocab) : tfidf_vector(docs[i], vocab),
                      labels[i]);
  }

  switch (cfg.kind) {
    case ModelKind::Lr: return lr_train(data, cfg, vocab);
    case ModelKind::Mnb: return mnb_train(data, cfg, vocab);
    case ModelKind::Rf: return rf_train(data, cfg, vocab, n_threads);
  }
  throw UsageError("train_model: unknown model kind");
}

}  // namespace sentirec
