#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "sentirec/classify.hpp"
#include "sentirec/corpus.hpp"

namespace sentirec {

// 2x2 prediction-vs-truth counts. Canonical layout: rows = actual class
// (positive first), columns = predicted, i.e. [[tp fn] [fp tn]].
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fn + fp + tn; }
  double accuracy() const;
};

// Labels must be in {0,1}; lengths must match and be non-zero.
ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truths);

// Predicts every review in `test` and compares against stored labels.
ConfusionMatrix evaluate(const AnyModel& model, const Dataset& test);

// Accuracy printed to 4 decimal places with trailing zeros trimmed
// (0.844, not 0.8440).
std::string format_accuracy(double accuracy);

// Five-line text report:
//   Confusion matrix:
//   [[3287  452]
//    [ 457 3304]]
//   Accuracy:
//   0.8788
std::string render_report(const ConfusionMatrix& m);

}  // namespace sentirec
