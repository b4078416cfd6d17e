#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sentirec/classify.hpp"
#include "sentirec/corpus.hpp"

namespace sentirec {

// The attribute tuple a query customer is matched on. Sentiment is the
// classifier's prediction for the query feedback.
struct MatchCriteria {
  int age_range_lower = 0;
  int age_range_upper = 0;
  Gender gender = Gender::M;
  int income_category = 1;
  Locality locality = Locality::City;
  int sentiment = 1;
};

struct RecommendationResult {
  std::vector<std::pair<int, std::uint64_t>> ranked;  // (product id, frequency)
  std::uint64_t matched_count = 0;
  std::uint64_t dataset_size = 0;
  MatchCriteria criteria;
};

// Records equal to the criteria on all six fields, in dataset order.
std::vector<const CustomerRecord*> match_customers(const Dataset& ds,
                                                   const MatchCriteria& criteria);

// Product purchase frequencies among matches, excluding exclude_product when
// present, sorted by frequency descending with ties broken by ascending id.
std::vector<std::pair<int, std::uint64_t>> rank_products(
    std::span<const CustomerRecord* const> matches, std::optional<int> exclude_product);

// Classifies q.feedback, matches on (age bucket, gender, income, locality,
// predicted sentiment) and ranks the matched customers' other products,
// excluding the product the feedback is about (q.reviewed_product_id).
RecommendationResult recommend(const Dataset& ds, const AnyModel& model,
                               const QueryCustomer& q);

// Ranked id list, one `<product_id>  <frequency>` line per product, then
// `matched: <n> of <total>`.
std::string render_recommendation(const RecommendationResult& r);

}  // namespace sentirec
