#include "sentirec/recommend.hpp"

#include <algorithm>
#include <map>

#include "sentirec/errors.hpp"

namespace sentirec {

std::vector<const CustomerRecord*> match_customers(const Dataset& ds,
                                                   const MatchCriteria& c) {
  std::vector<const CustomerRecord*> matches;
  for (const auto& r : ds.records) {
    if (r.age_range_lower == c.age_range_lower &&
        r.age_range_upper == c.age_range_upper && r.gender == c.gender &&
        r.income_category == c.income_category && r.locality == c.locality &&
        r.sentiment == c.sentiment) {
      matches.push_back(&r);
    }
  }
  return matches;
}

std::vector<std::pair<int, std::uint64_t>> rank_products(
    std::span<const CustomerRecord* const> matches, std::optional<int> exclude_product) {
  std::map<int, std::uint64_t> freq;
  for (const CustomerRecord* r : matches) {
    if (exclude_product && r->other_product_id == *exclude_product) continue;
    ++freq[r->other_product_id];
  }
  std::vector<std::pair<int, std::uint64_t>> ranked(freq.begin(), freq.end());
  // Frequency descending; equal frequencies by ascending product id.
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranked;
}

RecommendationResult recommend(const Dataset& ds, const AnyModel& model,
                               const QueryCustomer& q) {
  if (q.feedback.empty()) throw UsageError("recommend: feedback must be non-empty");
  if (q.age < 0) throw UsageError("recommend: age must be non-negative");

  RecommendationResult result;
  std::tie(result.criteria.age_range_lower, result.criteria.age_range_upper) =
      age_bucket(q.age);
  result.criteria.gender = q.gender;
  result.criteria.income_category = q.income_category;
  result.criteria.locality = q.locality;
  result.criteria.sentiment = predict_text(model, q.feedback);

  const auto matches = match_customers(ds, result.criteria);
  result.matched_count = matches.size();
  result.dataset_size = ds.size();
  result.ranked = rank_products(matches, q.reviewed_product_id);
  return result;
}

std::string render_recommendation(const RecommendationResult& r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(r.ranked[i].first);
  }
  out += "]\n";
  for (const auto& [product, freq] : r.ranked) {
    out += std::to_string(product) + "  " + std::to_string(freq) + "\n";
  }
  out += "matched: " + std::to_string(r.matched_count) + " of " +
         std::to_string(r.dataset_size) + "\n";
  return out;
}

}  // namespace sentirec
