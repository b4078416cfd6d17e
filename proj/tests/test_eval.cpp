#include <doctest.h>

#include <vector>

#include "sentirec/classify.hpp"
#include "sentirec/corpus.hpp"
#include "sentirec/errors.hpp"
#include "sentirec/eval.hpp"

using namespace sentirec;

TEST_CASE("the three reference confusion matrices evaluate exactly") {
  // Logistic regression: [[3287 452] [457 3304]]
  const ConfusionMatrix lr{3287, 452, 457, 3304};
  CHECK(lr.total() == 7500);
  CHECK(lr.accuracy() == doctest::Approx(0.8788).epsilon(1e-12));
  CHECK(format_accuracy(lr.accuracy()) == "0.8788");

  // Multinomial naive Bayes: [[3271 468] [702 3059]]
  const ConfusionMatrix mnb{3271, 468, 702, 3059};
  CHECK(mnb.total() == 7500);
  CHECK(mnb.accuracy() == doctest::Approx(0.8440).epsilon(1e-12));
  CHECK(format_accuracy(mnb.accuracy()) == "0.844");

  // Random forest: [[3126 613] [551 3210]]
  const ConfusionMatrix rf{3126, 613, 551, 3210};
  CHECK(rf.total() == 7500);
  CHECK(rf.accuracy() == doctest::Approx(0.8448).epsilon(1e-12));
  CHECK(format_accuracy(rf.accuracy()) == "0.8448");
}

TEST_CASE("confusion counts land in the canonical cells") {
  //           pred 1  pred 0
  // truth 1 →   tp      fn
  // truth 0 →   fp      tn
  const std::vector<int> preds = {1, 0, 1, 0, 1};
  const std::vector<int> truths = {1, 1, 0, 0, 1};
  const ConfusionMatrix m = confusion(preds, truths);
  CHECK(m.tp == 2);
  CHECK(m.fn == 1);
  CHECK(m.fp == 1);
  CHECK(m.tn == 1);
  CHECK(m.total() == 5);
}

TEST_CASE("perfect and constant predictors") {
  const std::vector<int> truths = {1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
  const ConfusionMatrix perfect = confusion(truths, truths);
  CHECK(perfect.fp == 0);
  CHECK(perfect.fn == 0);
  CHECK(perfect.accuracy() == 1.0);

  const std::vector<int> ones(10, 1);
  const ConfusionMatrix constant = confusion(ones, truths);
  CHECK(constant.accuracy() == 0.5);
}

TEST_CASE("swapping labels in both arguments rotates the matrix") {
  const std::vector<int> preds = {1, 0, 1, 1, 0, 0, 1};
  const std::vector<int> truths = {1, 1, 0, 1, 0, 1, 0};
  const ConfusionMatrix m = confusion(preds, truths);

  std::vector<int> preds_sw, truths_sw;
  for (int p : preds) preds_sw.push_back(1 - p);
  for (int t : truths) truths_sw.push_back(1 - t);
  const ConfusionMatrix s = confusion(preds_sw, truths_sw);

  CHECK(s.tp == m.tn);
  CHECK(s.fn == m.fp);
  CHECK(s.fp == m.fn);
  CHECK(s.tn == m.tp);
  CHECK(s.accuracy() == m.accuracy());
}

TEST_CASE("confusion validates its inputs") {
  const std::vector<int> a = {1, 0};
  const std::vector<int> b = {1};
  CHECK_THROWS_AS(confusion(a, b), UsageError);
  const std::vector<int> empty;
  CHECK_THROWS_AS(confusion(empty, empty), UsageError);
  const std::vector<int> bad = {2, 0};
  CHECK_THROWS_AS(confusion(bad, a), UsageError);
}

TEST_CASE("render_report matches the reference layout exactly") {
  const ConfusionMatrix m{3287, 452, 457, 3304};
  CHECK(render_report(m) ==
        "Confusion matrix:\n"
        "[[3287  452]\n"
        " [ 457 3304]]\n"
        "Accuracy:\n"
        "0.8788\n");

  const ConfusionMatrix small{2, 0, 0, 2};
  CHECK(render_report(small) ==
        "Confusion matrix:\n"
        "[[2 0]\n"
        " [0 2]]\n"
        "Accuracy:\n"
        "1\n");
}

TEST_CASE("format_accuracy trims trailing zeros to four decimals") {
  CHECK(format_accuracy(0.8788) == "0.8788");
  CHECK(format_accuracy(0.844) == "0.844");
  CHECK(format_accuracy(0.5) == "0.5");
  CHECK(format_accuracy(1.0) == "1");
  CHECK(format_accuracy(0.87654) == "0.8765");
}

TEST_CASE("evaluate predicts every test review deterministically") {
  const Dataset ds = generate_synthetic(400, 3, false);
  const auto [train, test] = split(ds, SplitSpec{0.3, 42});
  std::vector<std::vector<std::string>> docs;
  std::vector<int> labels;
  for (const auto& r : train.records) {
    docs.push_back(tokenize(r.review));
    labels.push_back(r.sentiment);
  }
  TrainConfig cfg;
  cfg.kind = ModelKind::Mnb;
  const AnyModel model = train_model(docs, labels, cfg);

  const ConfusionMatrix a = evaluate(model, test);
  const ConfusionMatrix b = evaluate(model, test);
  CHECK(a.total() == test.size());
  CHECK(a.tp == b.tp);
  CHECK(a.fn == b.fn);
  CHECK(a.fp == b.fp);
  CHECK(a.tn == b.tn);

  CHECK_THROWS_AS(evaluate(model, Dataset{}), DataError);
}
