#include "sentirec/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sentirec/errors.hpp"

namespace sentirec {

namespace {

using nlohmann::json;

json config_to_json(const TrainConfig& cfg) {
  return json{{"kind", to_string(cfg.kind)},
              {"seed", cfg.seed},
              {"learning_rate", cfg.learning_rate},
              {"epochs", cfg.epochs},
              {"l2_lambda", cfg.l2_lambda},
              {"alpha", cfg.alpha},
              {"n_trees", cfg.n_trees},
              {"max_depth", cfg.max_depth},
              {"min_samples_split", cfg.min_samples_split},
              {"max_features", cfg.max_features},
              {"bootstrap", cfg.bootstrap}};
}

json vocab_to_json(const Vocabulary& vocab) {
  json terms = json::object();
  for (const auto& [term, index] : vocab.term_to_index) terms[term] = index;
  return json{{"term_to_index", std::move(terms)},
              {"document_frequency", vocab.document_frequency},
              {"n_documents", vocab.n_documents}};
}

// Compact tree encoding: internal node [feature, threshold, left, right],
// leaf [label].
json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes) {
    if (n.is_leaf) {
      nodes.push_back(json::array({n.label}));
    } else {
      nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right}));
    }
  }
  return nodes;
}

class FieldReader {
 public:
  explicit FieldReader(const json& j, std::string context)
      : j_(j), context_(std::move(context)) {}

  const json& at(const std::string& key) const {
    auto it = j_.find(key);
    if (it == j_.end()) {
      throw DataError("model file: missing field '" + context_ + key + "'");
    }
    return *it;
  }

  template <typename T>
  T get(const std::string& key) const {
    try {
      return at(key).get<T>();
    } catch (const json::exception&) {
      throw DataError("model file: field '" + context_ + key + "' has the wrong type");
    }
  }

 private:
  const json& j_;
  std::string context_;
};

TrainConfig config_from_json(const json& j) {
  FieldReader r(j, "config.");
  TrainConfig cfg;
  cfg.kind = parse_model_kind(r.get<std::string>("kind"));
  cfg.seed = r.get<std::uint64_t>("seed");
  cfg.learning_rate = r.get<double>("learning_rate");
  cfg.epochs = r.get<int>("epochs");
  cfg.l2_lambda = r.get<double>("l2_lambda");
  cfg.alpha = r.get<double>("alpha");
  cfg.n_trees = r.get<int>("n_trees");
  cfg.max_depth = r.get<int>("max_depth");
  cfg.min_samples_split = r.get<int>("min_samples_split");
  cfg.max_features = r.get<std::string>("max_features");
  cfg.bootstrap = r.get<bool>("bootstrap");
  return cfg;
}

Vocabulary vocab_from_json(const json& j) {
  FieldReader r(j, "vocabulary.");
  Vocabulary vocab;
  const json& terms = r.at("term_to_index");
  if (!terms.is_object()) {
    throw DataError("model file: field 'vocabulary.term_to_index' has the wrong type");
  }
  for (const auto& [term, index] : terms.items()) {
    vocab.term_to_index[term] = index.get<std::uint32_t>();
  }
  vocab.document_frequency = r.get<std::vector<std::uint32_t>>("document_frequency");
  vocab.n_documents = r.get<std::uint64_t>("n_documents");

  // Indices must be exactly {0..V-1}.
  std::vector<bool> seen(vocab.term_to_index.size(), false);
  for (const auto& [term, index] : vocab.term_to_index) {
    if (index >= seen.size() || seen[index]) {
      throw DataError("model file: vocabulary indices are not a dense 0..V-1 range");
    }
    seen[index] = true;
  }
  if (vocab.document_frequency.size() != vocab.term_to_index.size()) {
    throw DataError("model file: field 'vocabulary.document_frequency' has the wrong length");
  }
  return vocab;
}

void require_finite(const std::vector<double>& values, const std::string& field) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DataError("model file: field '" + field + "' contains a non-finite value");
    }
  }
}

DecisionTree tree_from_json(const json& j, std::size_t vocab_size, std::size_t tree_idx) {
  const std::string where = "parameters.trees[" + std::to_string(tree_idx) + "]";
  if (!j.is_array() || j.empty()) {
    throw DataError("model file: field '" + where + "' must be a non-empty array");
  }
  DecisionTree tree;
  tree.nodes.reserve(j.size());
  for (const json& nj : j) {
    TreeNode node;
    try {
      if (nj.is_array() && nj.size() == 1) {
        node.is_leaf = true;
        node.label = nj[0].get<int>();
        if (node.label != 0 && node.label != 1) {
          throw DataError("model file: leaf label out of range in '" + where + "'");
        }
      } else if (nj.is_array() && nj.size() == 4) {
        node.is_leaf = false;
        node.feature = nj[0].get<std::uint32_t>();
        node.threshold = nj[1].get<double>();
        node.left = nj[2].get<std::int32_t>();
        node.right = nj[3].get<std::int32_t>();
        if (node.feature >= vocab_size || !std::isfinite(node.threshold) ||
            node.left < 0 || node.right < 0 ||
            static_cast<std::size_t>(node.left) >= j.size() ||
            static_cast<std::size_t>(node.right) >= j.size()) {
          throw DataError("model file: invalid node in '" + where + "'");
        }
      } else {
        throw DataError("model file: malformed node in '" + where + "'");
      }
    } catch (const json::exception&) {
      throw DataError("model file: malformed node in '" + where + "'");
    }
    tree.nodes.push_back(node);
  }
  return tree;
}

}  // namespace

std::string serialize_model(const AnyModel& model) {
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["model_kind"] = to_string(model_kind(model));
  doc["config"] = config_to_json(model_config(model));
  doc["vocabulary"] = vocab_to_json(model_vocab(model));

  json params;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          params = json{{"weights", m.weights}, {"bias", m.bias}};
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          params = json{{"log_prior", m.log_prior}, {"log_likelihood", m.log_likelihood}};
        } else {
          json trees = json::array();
          for (const auto& tree : m.trees) trees.push_back(tree_to_json(tree));
          params = json{{"trees", std::move(trees)}};
        }
      },
      model);
  doc["parameters"] = std::move(params);
  return doc.dump(2) + "\n";
}

AnyModel deserialize_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model file: invalid JSON: ") + e.what());
  }
  FieldReader top(doc, "");

  const int version = top.get<int>("format_version");
  if (version != kModelFormatVersion) {
    throw DataError("model file: unsupported format_version " + std::to_string(version));
  }
  const std::string kind_str = top.get<std::string>("model_kind");
  ModelKind kind;
  try {
    kind = parse_model_kind(kind_str);
  } catch (const UsageError&) {
    throw DataError("model file: unknown model_kind '" + kind_str + "'");
  }

  const TrainConfig cfg = config_from_json(top.at("config"));
  Vocabulary vocab = vocab_from_json(top.at("vocabulary"));
  const std::size_t v = vocab.size();
  FieldReader params(top.at("parameters"), "parameters.");

  if (kind == ModelKind::Lr) {
    LogisticModel m;
    m.config = cfg;
    m.vocab = std::move(vocab);
    m.weights = params.get<std::vector<double>>("weights");
    m.bias = params.get<double>("bias");
    if (m.weights.size() != v) {
      throw DataError("model file: field 'parameters.weights' has the wrong length");
    }
    require_finite(m.weights, "parameters.weights");
    if (!std::isfinite(m.bias)) {
      throw DataError("model file: field 'parameters.bias' contains a non-finite value");
    }
    return m;
  }
  if (kind == ModelKind::Mnb) {
    NaiveBayesModel m;
    m.config = cfg;
    m.alpha = cfg.alpha;
    m.vocab = std::move(vocab);
    m.log_prior = params.get<std::array<double, 2>>("log_prior");
    m.log_likelihood = params.get<std::array<std::vector<double>, 2>>("log_likelihood");
    for (int c = 0; c < 2; ++c) {
      if (m.log_likelihood[c].size() != v) {
        throw DataError("model file: field 'parameters.log_likelihood' has the wrong length");
      }
      require_finite(m.log_likelihood[c], "parameters.log_likelihood");
      if (!std::isfinite(m.log_prior[c])) {
        throw DataError("model file: field 'parameters.log_prior' contains a non-finite value");
      }
    }
    return m;
  }

  RandomForestModel m;
  m.config = cfg;
  m.vocab = std::move(vocab);
  const json& trees = params.at("trees");
  if (!trees.is_array() || trees.empty()) {
    throw DataError("model file: field 'parameters.trees' must be a non-empty array");
  }
  m.trees.reserve(trees.size());
  for (std::size_t t = 0; t < trees.size(); ++t) {
    m.trees.push_back(tree_from_json(trees[t], v, t));
  }
  return m;
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path.string());
  out << serialize_model(model);
  if (!out) throw DataError("write failed: " + path.string());
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace sentirec
