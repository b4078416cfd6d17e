#include "sentirec/textfeat.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sentirec/errors.hpp"

namespace sentirec {

double SparseVector::value_at(std::uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  return (it != entries.end() && it->first == index) ? it->second : 0.0;
}

double SparseVector::dot(const std::vector<double>& dense) const {
  double sum = 0.0;
  for (const auto& [i, v] : entries) sum += v * dense[i];
  return sum;
}

double SparseVector::l2_norm() const {
  double sq = 0.0;
  for (const auto& [i, v] : entries) sq += v * v;
  return std::sqrt(sq);
}

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  // Pass 1: blank out <...> spans so "trashy<br />8" does not fuse tokens.
  std::string plain;
  plain.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      const std::size_t close = text.find('>', i + 1);
      if (close != std::string_view::npos) {
        plain.push_back(' ');
        i = close + 1;
        continue;
      }
      // No closing '>': treat '<' as an ordinary separator byte.
    }
    plain.push_back(text[i]);
    ++i;
  }

  // Pass 2: lowercase, split on non-alphabetic bytes, drop tokens of length < 2.
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (char c : plain) {
    if (is_alpha(c)) {
      current.push_back(to_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& docs,
                       std::size_t max_terms) {
  if (docs.empty()) throw DataError("build_vocab: no documents");
  if (max_terms == 0) throw UsageError("build_vocab: max_terms must be >= 1");

  std::unordered_map<std::string, std::uint32_t> df;
  for (const auto& doc : docs) {
    std::unordered_map<std::string, bool> seen;
    for (const auto& tok : doc) {
      if (!seen.emplace(tok, true).second) continue;
      ++df[tok];
    }
  }
  if (df.empty()) throw DataError("build_vocab: all documents are empty");

  // Highest document frequency first, ties lexicographically ascending.
  std::vector<std::pair<std::string, std::uint32_t>> terms(df.begin(), df.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (terms.size() > max_terms) terms.resize(max_terms);

  Vocabulary vocab;
  vocab.n_documents = docs.size();
  for (const auto& [term, freq] : terms) vocab.term_to_index[term] = 0;
  vocab.document_frequency.resize(vocab.term_to_index.size());
  std::uint32_t index = 0;
  for (auto& [term, idx] : vocab.term_to_index) {
    idx = index;
    vocab.document_frequency[index] = df[term];
    ++index;
  }
  return vocab;
}

SparseVector count_vector(std::span<const std::string> doc, const Vocabulary& vocab) {
  if (vocab.empty()) throw UsageError("count_vector: vocabulary is empty");
  SparseVector out;
  std::unordered_map<std::uint32_t, double> acc;
  for (const auto& tok : doc) {
    auto it = vocab.term_to_index.find(tok);
    if (it == vocab.term_to_index.end()) continue;
    acc[it->second] += 1.0;
  }
  out.entries.assign(acc.begin(), acc.end());
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

double idf_weight(const Vocabulary& vocab, std::uint32_t index) {
  const double n = static_cast<double>(vocab.n_documents);
  const double df = static_cast<double>(vocab.document_frequency.at(index));
  return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

SparseVector tfidf_vector(std::span<const std::string> doc, const Vocabulary& vocab) {
  if (vocab.n_documents < 1) throw UsageError("tfidf_vector: vocabulary is not fitted");
  SparseVector v = count_vector(doc, vocab);
  for (auto& [i, value] : v.entries) value *= idf_weight(vocab, i);
  const double norm = v.l2_norm();
  if (norm > 0.0) {
    for (auto& [i, value] : v.entries) value /= norm;
  }
  return v;
}

}  // namespace sentirec
