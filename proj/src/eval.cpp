#include "sentirec/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "sentirec/errors.hpp"

namespace sentirec {

double ConfusionMatrix::accuracy() const {
  const std::uint64_t n = total();
  if (n == 0) throw UsageError("confusion matrix is empty");
  return static_cast<double>(tp + tn) / static_cast<double>(n);
}

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truths) {
  if (predictions.size() != truths.size()) {
    throw UsageError("confusion: predictions and truths differ in length (" +
                     std::to_string(predictions.size()) + " vs " +
                     std::to_string(truths.size()) + ")");
  }
  if (predictions.empty()) throw UsageError("confusion: empty input");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const int p = predictions[i];
    const int t = truths[i];
    if ((p != 0 && p != 1) || (t != 0 && t != 1)) {
      throw UsageError("confusion: labels must be 0 or 1");
    }
    if (t == 1) {
      p == 1 ? ++m.tp : ++m.fn;
    } else {
      p == 1 ? ++m.fp : ++m.tn;
    }
  }
  return m;
}

ConfusionMatrix evaluate(const AnyModel& model, const Dataset& test) {
  if (test.empty()) throw DataError("evaluate: empty test set");
  std::vector<int> predictions;
  std::vector<int> truths;
  predictions.reserve(test.size());
  truths.reserve(test.size());
  for (const auto& r : test.records) {
    predictions.push_back(predict_text(model, r.review));
    truths.push_back(r.sentiment);
  }
  return confusion(predictions, truths);
}

std::string format_accuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", accuracy);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string render_report(const ConfusionMatrix& m) {
  const std::uint64_t cells[4] = {m.tp, m.fn, m.fp, m.tn};
  std::size_t width = 1;
  for (std::uint64_t c : cells) width = std::max(width, std::to_string(c).size());
  auto cell = [&](std::uint64_t c) {
    std::string s = std::to_string(c);
    return std::string(width - s.size(), ' ') + s;
  };
  std::string out = "Confusion matrix:\n";
  out += "[[" + cell(m.tp) + " " + cell(m.fn) + "]\n";
  out += " [" + cell(m.fp) + " " + cell(m.tn) + "]]\n";
  out += "Accuracy:\n";
  out += format_accuracy(m.accuracy());
  out += "\n";
  return out;
}

}  // namespace sentirec
