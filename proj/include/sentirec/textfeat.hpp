#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentirec {

// Sparse feature vector: entries sorted by index, no explicit zeros.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }

  // Value at a feature index, 0 when absent. Binary search.
  double value_at(std::uint32_t index) const;

  double dot(const std::vector<double>& dense) const;
  double l2_norm() const;
};

// Term-index mapping fitted on a training corpus. Indices are assigned in
// lexicographic term order, so the mapping is canonical for a given corpus.
struct Vocabulary {
  std::map<std::string, std::uint32_t> term_to_index;
  std::vector<std::uint32_t> document_frequency;  // by index
  std::uint64_t n_documents = 0;

  std::size_t size() const { return term_to_index.size(); }
  bool empty() const { return term_to_index.empty(); }
};

// Strip <...> spans, lowercase, split on non-alphabetic bytes, drop tokens
// shorter than 2. Total and deterministic.
std::vector<std::string> tokenize(std::string_view text);

// Keep the max_terms terms of highest document frequency (ties broken
// lexicographically ascending). Throws DataError when every document is empty.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& docs,
                       std::size_t max_terms);

// Raw term counts over the vocabulary; out-of-vocabulary tokens are ignored.
SparseVector count_vector(std::span<const std::string> doc, const Vocabulary& vocab);

// Smoothed idf: ln((1 + n_documents) / (1 + df)) + 1.
double idf_weight(const Vocabulary& vocab, std::uint32_t index);

// tf * idf, L2-normalized unless all-zero.
SparseVector tfidf_vector(std::span<const std::string> doc, const Vocabulary& vocab);

}  // namespace sentirec
