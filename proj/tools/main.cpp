#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentirec/classify.hpp"
#include "sentirec/corpus.hpp"
#include "sentirec/errors.hpp"
#include "sentirec/eval.hpp"
#include "sentirec/model_io.hpp"
#include "sentirec/recommend.hpp"

namespace {

using nlohmann::json;
using namespace sentirec;

struct CommonFlags {
  std::string output = "text";
  bool verbose = false;

  bool json_mode() const { return output == "json"; }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--output", flags.output, "Output mode")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_flag("--verbose", flags.verbose, "Log progress to stderr");
}

void vlog(const CommonFlags& flags, const std::string& msg) {
  if (flags.verbose) std::cerr << msg << "\n";
}

json confusion_json(const ConfusionMatrix& m) {
  return json{{"tp", m.tp},
              {"fn", m.fn},
              {"fp", m.fp},
              {"tn", m.tn},
              {"accuracy", m.accuracy()}};
}

json criteria_json(const MatchCriteria& c) {
  return json{{"age_range_lower", c.age_range_lower},
              {"age_range_upper", c.age_range_upper},
              {"gender", to_string(c.gender)},
              {"income_category", c.income_category},
              {"locality", to_string(c.locality)},
              {"sentiment", c.sentiment}};
}

// ---------------------------------------------------------------------------

struct GenDataArgs {
  CommonFlags common;
  std::size_t rows = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool paper_fixture = false;
};

int run_gen_data(const GenDataArgs& a) {
  const Dataset ds = generate_synthetic(a.rows, a.seed, a.paper_fixture);
  save_csv(ds, a.out);
  vlog(a.common, "generated " + std::to_string(ds.size()) + " records");
  if (a.common.json_mode()) {
    json doc{{"rows", ds.size()},
             {"seed", a.seed},
             {"paper_fixture", a.paper_fixture},
             {"out", a.out}};
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << "wrote " << ds.size() << " rows to " << a.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  CommonFlags common;
  std::string data;
  std::string model_kind;
  std::string out;
  double test_fraction = 0.3;
  std::uint64_t split_seed = 42;
  std::size_t max_terms = 20000;
  int threads = 1;
  TrainConfig cfg;
};

AnyModel train_on_dataset(const Dataset& train, const TrainConfig& cfg,
                          std::size_t max_terms, int threads) {
  std::vector<std::vector<std::string>> docs;
  std::vector<int> labels;
  docs.reserve(train.size());
  labels.reserve(train.size());
  for (const auto& r : train.records) {
    docs.push_back(tokenize(r.review));
    labels.push_back(r.sentiment);
  }
  return train_model(docs, labels, cfg, max_terms, threads);
}

int run_train(TrainArgs& a) {
  a.cfg.kind = parse_model_kind(a.model_kind);
  a.cfg.validate();
  if (!(a.test_fraction > 0.0 && a.test_fraction < 1.0)) {
    throw UsageError("--test-fraction must be in (0, 1)");
  }

  const Dataset ds = load_csv(a.data);
  vlog(a.common, "loaded " + std::to_string(ds.size()) + " records from " + a.data);
  const auto [train, test] = split(ds, SplitSpec{a.test_fraction, a.split_seed});
  vlog(a.common, "split: " + std::to_string(train.size()) + " train / " +
                     std::to_string(test.size()) + " test");

  const AnyModel model = train_on_dataset(train, a.cfg, a.max_terms, a.threads);
  save_model(model, a.out);
  vlog(a.common, "model written to " + a.out);

  const ConfusionMatrix m = evaluate(model, test);
  if (a.common.json_mode()) {
    json doc{{"model_kind", a.model_kind},
             {"model_file", a.out},
             {"train_size", train.size()},
             {"test_size", test.size()},
             {"confusion", confusion_json(m)}};
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << render_report(m);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct EvaluateArgs {
  CommonFlags common;
  std::string data;
  std::string model_file;
  std::optional<double> test_fraction;
  std::uint64_t split_seed = 42;
};

int run_evaluate(const EvaluateArgs& a) {
  const Dataset ds = load_csv(a.data);
  const AnyModel model = load_model(a.model_file);
  const Dataset* target = &ds;
  Dataset test_side;
  if (a.test_fraction) {
    if (!(*a.test_fraction > 0.0 && *a.test_fraction < 1.0)) {
      throw UsageError("--test-fraction must be in (0, 1)");
    }
    auto [train, test] = split(ds, SplitSpec{*a.test_fraction, a.split_seed});
    test_side = std::move(test);
    target = &test_side;
    vlog(a.common, "evaluating on the held-out split: " +
                       std::to_string(test_side.size()) + " records");
  }
  const ConfusionMatrix m = evaluate(model, *target);
  if (a.common.json_mode()) {
    json doc{{"model_kind", to_string(model_kind(model))},
             {"evaluated", target->size()},
             {"confusion", confusion_json(m)}};
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << render_report(m);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  CommonFlags common;
  std::vector<std::string> model_files;
  std::string text;
  bool all = false;
};

int run_predict(const PredictArgs& a) {
  if (a.text.empty()) throw UsageError("--text must be non-empty");

  std::vector<AnyModel> models;
  models.reserve(a.model_files.size());
  for (const auto& path : a.model_files) models.push_back(load_model(path));

  if (a.all) {
    if (models.size() != 3) {
      throw UsageError("--all requires exactly three --model-file arguments");
    }
    // Paper ordering: LR, RF, MNB. The files self-describe their kind.
    std::vector<const AnyModel*> ordered(3, nullptr);
    for (const auto& m : models) {
      const std::size_t slot = model_kind(m) == ModelKind::Lr   ? 0
                               : model_kind(m) == ModelKind::Rf ? 1
                                                                : 2;
      if (ordered[slot]) throw UsageError("--all requires one model of each kind");
      ordered[slot] = &m;
    }
    json predictions = json::array();
    for (const AnyModel* m : ordered) {
      const int label = predict_text(*m, a.text);
      if (a.common.json_mode()) {
        predictions.push_back(json{{"model_kind", to_string(model_kind(*m))},
                                   {"label", label}});
      } else {
        std::cout << label << "\n";
      }
    }
    if (a.common.json_mode()) {
      std::cout << json{{"predictions", predictions}}.dump() << "\n";
    }
    return 0;
  }

  if (models.size() != 1) {
    throw UsageError("predict requires exactly one --model-file (or use --all)");
  }
  const int label = predict_text(models[0], a.text);
  if (a.common.json_mode()) {
    json doc{{"predictions", json::array({json{
                  {"model_kind", to_string(model_kind(models[0]))}, {"label", label}}})}};
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << label << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct RecommendArgs {
  CommonFlags common;
  std::string data;
  std::string model_file;
  int age = 0;
  std::string gender;
  int income = 1;
  std::string locality;
  std::string feedback;
  int reviewed_product = 1;
};

int run_recommend(const RecommendArgs& a) {
  if (a.feedback.empty()) throw UsageError("--feedback must be non-empty");
  const Dataset ds = load_csv(a.data);
  const AnyModel model = load_model(a.model_file);

  QueryCustomer q;
  q.age = a.age;
  q.gender = parse_gender(a.gender);
  q.income_category = a.income;
  q.locality = parse_locality(a.locality);
  q.feedback = a.feedback;
  q.reviewed_product_id = a.reviewed_product;

  const RecommendationResult r = recommend(ds, model, q);
  if (a.common.json_mode()) {
    json ranked = json::array();
    for (const auto& [product, freq] : r.ranked) {
      ranked.push_back(json{{"product_id", product}, {"frequency", freq}});
    }
    json doc{{"ranked", ranked},
             {"matched_count", r.matched_count},
             {"total", r.dataset_size},
             {"criteria", criteria_json(r.criteria)}};
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << render_recommendation(r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment-driven insurance product recommender"};
  app.require_subcommand(1);

  GenDataArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-data", "Generate a seeded synthetic customer CSV");
  gen_cmd->add_option("--rows", gen.rows, "Number of rows")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();
  gen_cmd->add_flag("--paper-fixture", gen.paper_fixture,
                    "Embed the 153-row matching scenario (requires --rows 25000)");
  add_common(gen_cmd, gen.common);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand(
      "train", "Train a sentiment classifier and report held-out accuracy");
  train_cmd->add_option("--data", train.data, "Input CSV")->required();
  train_cmd->add_option("--model", train.model_kind, "Model kind: lr, mnb or rf")
      ->required();
  train_cmd->add_option("--out", train.out, "Output model file")->required();
  train_cmd->add_option("--test-fraction", train.test_fraction, "Held-out fraction")
      ->capture_default_str();
  train_cmd->add_option("--split-seed", train.split_seed, "Split shuffle seed")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.cfg.seed, "Training seed (random forest)")
      ->capture_default_str();
  train_cmd->add_option("--max-terms", train.max_terms, "Vocabulary size cap")
      ->capture_default_str();
  train_cmd->add_option("--learning-rate", train.cfg.learning_rate, "LR step size")
      ->capture_default_str();
  train_cmd->add_option("--epochs", train.cfg.epochs, "LR full-batch epochs")
      ->capture_default_str();
  train_cmd->add_option("--l2-lambda", train.cfg.l2_lambda, "LR L2 penalty")
      ->capture_default_str();
  train_cmd->add_option("--alpha", train.cfg.alpha, "MNB smoothing constant")
      ->capture_default_str();
  train_cmd->add_option("--trees", train.cfg.n_trees, "RF tree count")
      ->capture_default_str();
  train_cmd->add_option("--max-depth", train.cfg.max_depth, "RF depth cap")
      ->capture_default_str();
  train_cmd->add_option("--min-samples-split", train.cfg.min_samples_split,
                        "RF minimum node size to split")
      ->capture_default_str();
  train_cmd->add_option("--threads", train.threads, "RF training threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(train_cmd, train.common);

  EvaluateArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Evaluate a trained model on a labeled CSV");
  eval_cmd->add_option("--data", eval_args.data, "Input CSV")->required();
  eval_cmd->add_option("--model-file", eval_args.model_file, "Trained model file")
      ->required();
  double eval_fraction = 0.0;
  CLI::Option* frac_opt =
      eval_cmd->add_option("--test-fraction", eval_fraction,
                           "Evaluate only the held-out side of the seeded split");
  eval_cmd->add_option("--split-seed", eval_args.split_seed, "Split shuffle seed")
      ->capture_default_str();
  add_common(eval_cmd, eval_args.common);

  PredictArgs predict;
  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "Print the sentiment label (0 or 1) for a feedback line");
  predict_cmd->add_option("--model-file", predict.model_files, "Trained model file")
      ->required();
  predict_cmd->add_option("--text", predict.text, "Feedback text")->required();
  predict_cmd->add_flag("--all", predict.all,
                        "Expect three model files; print LR, RF, MNB lines");
  add_common(predict_cmd, predict.common);

  RecommendArgs rec;
  CLI::App* rec_cmd = app.add_subcommand(
      "recommend", "Rank products for a query customer by matched-purchase frequency");
  rec_cmd->add_option("--data", rec.data, "Existing-customer CSV")->required();
  rec_cmd->add_option("--model-file", rec.model_file, "Trained model file")->required();
  rec_cmd->add_option("--age", rec.age, "Customer age")
      ->required()
      ->check(CLI::NonNegativeNumber);
  rec_cmd->add_option("--gender", rec.gender, "M or F")
      ->required()
      ->check(CLI::IsMember({"M", "F"}));
  rec_cmd->add_option("--income", rec.income, "Income category (positive integer)")
      ->required()
      ->check(CLI::PositiveNumber);
  rec_cmd->add_option("--locality", rec.locality, "City or Outskirts")
      ->required()
      ->check(CLI::IsMember({"City", "Outskirts"}));
  rec_cmd->add_option("--feedback", rec.feedback, "Feedback text")->required();
  rec_cmd->add_option("--reviewed-product", rec.reviewed_product,
                      "Product the feedback is about (excluded from the ranking)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(rec_cmd, rec.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*gen_cmd) return run_gen_data(gen);
    if (*train_cmd) return run_train(train);
    if (*eval_cmd) {
      if (frac_opt->count() > 0) eval_args.test_fraction = eval_fraction;
      return run_evaluate(eval_args);
    }
    if (*predict_cmd) return run_predict(predict);
    if (*rec_cmd) return run_recommend(rec);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
