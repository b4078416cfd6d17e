#include "sentirec/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "sentirec/errors.hpp"
#include "sentirec/rng.hpp"

namespace sentirec {

const char* const kCsvHeader =
    "id,Age,Age_range_lower,Age_range_upper,Gender,Income Category,Locality,"
    "Other Product purchased by this customer,sentiment,review";

std::string to_string(Gender g) { return g == Gender::M ? "M" : "F"; }

std::string to_string(Locality l) { return l == Locality::City ? "City" : "Outskirts"; }

Gender parse_gender(const std::string& s) {
  if (s == "M") return Gender::M;
  if (s == "F") return Gender::F;
  throw DataError("invalid Gender value '" + s + "' (expected M or F)");
}

Locality parse_locality(const std::string& s) {
  if (s == "City") return Locality::City;
  if (s == "Outskirts") return Locality::Outskirts;
  throw DataError("invalid Locality value '" + s + "' (expected City or Outskirts)");
}

std::pair<int, int> age_bucket(int age) {
  if (age < 0) throw DataError("age must be non-negative, got " + std::to_string(age));
  const int lower = 5 * (age / 5);
  return {lower, lower + 5};
}

// ---------------------------------------------------------------------------
// CSV

namespace {

// RFC 4180 reader: quoted fields may contain commas, escaped quotes ("") and
// line breaks. Accepts both \n and \r\n record terminators.
std::vector<std::vector<std::string>> read_csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  std::size_t i = 0;
  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(fields));
    fields.clear();
  };

  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field.push_back(c);
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
        } else {
          field.push_back(c);  // stray quote inside an unquoted field
        }
        ++i;
        break;
      case ',':
        end_field();
        ++i;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_record();
        ++i;
        break;
      default:
        field.push_back(c);
        field_started = true;
        ++i;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field at end of file");
  if (field_started || !field.empty() || !fields.empty()) end_record();
  return records;
}

std::string csv_escape(const std::string& field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_header(const std::string& header) {
  std::vector<std::string> cols;
  std::string col;
  for (char c : header) {
    if (c == ',') {
      cols.push_back(col);
      col.clear();
    } else {
      col.push_back(c);
    }
  }
  cols.push_back(col);
  return cols;
}

int parse_int_cell(const std::string& cell, const char* column, std::size_t row) {
  int value = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DataError("row " + std::to_string(row) + ": cannot parse " + column +
                    " value '" + cell + "' as an integer");
  }
  return value;
}

void validate_record(const CustomerRecord& r, std::size_t row) {
  auto fail = [&](const std::string& what) {
    throw DataError("row " + std::to_string(row) + " (id " + r.id + "): " + what);
  };
  if (r.id.empty()) fail("empty id");
  if (r.age < 0) fail("negative age");
  const auto [lower, upper] = age_bucket(r.age);
  if (r.age_range_lower != lower || r.age_range_upper != upper) {
    fail("age range " + std::to_string(r.age_range_lower) + "-" +
         std::to_string(r.age_range_upper) + " does not match the 5-year bucket " +
         std::to_string(lower) + "-" + std::to_string(upper) + " for age " +
         std::to_string(r.age));
  }
  if (r.income_category < 1) fail("Income Category must be a positive integer");
  if (r.other_product_id < 1) fail("product id must be >= 1");
  if (r.sentiment != 0 && r.sentiment != 1) fail("sentiment must be 0 or 1");
}

}  // namespace

Dataset parse_csv(const std::string& text) {
  const auto records = read_csv_records(text);
  if (records.empty()) throw DataError("empty CSV: missing header row");

  const std::vector<std::string> expected = split_header(kCsvHeader);
  const std::vector<std::string>& header = records[0];
  for (std::size_t i = 0; i < std::min(header.size(), expected.size()); ++i) {
    if (header[i] != expected[i]) {
      throw DataError("CSV schema mismatch: column " + std::to_string(i + 1) +
                      " is '" + header[i] + "', expected '" + expected[i] + "'");
    }
  }
  if (header.size() < expected.size()) {
    throw DataError("CSV schema mismatch: missing column '" +
                    expected[header.size()] + "'");
  }
  if (header.size() > expected.size()) {
    throw DataError("CSV schema mismatch: unexpected extra column '" +
                    header[expected.size()] + "'");
  }

  Dataset ds;
  ds.records.reserve(records.size() - 1);
  std::unordered_set<std::string> ids;
  for (std::size_t n = 1; n < records.size(); ++n) {
    const auto& row = records[n];
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    if (row.size() != expected.size()) {
      throw DataError("row " + std::to_string(n) + ": expected " +
                      std::to_string(expected.size()) + " fields, found " +
                      std::to_string(row.size()));
    }
    CustomerRecord r;
    r.id = row[0];
    r.age = parse_int_cell(row[1], "Age", n);
    r.age_range_lower = parse_int_cell(row[2], "Age_range_lower", n);
    r.age_range_upper = parse_int_cell(row[3], "Age_range_upper", n);
    r.gender = parse_gender(row[4]);
    r.income_category = parse_int_cell(row[5], "Income Category", n);
    r.locality = parse_locality(row[6]);
    r.other_product_id =
        parse_int_cell(row[7], "Other Product purchased by this customer", n);
    r.sentiment = parse_int_cell(row[8], "sentiment", n);
    r.review = row[9];
    validate_record(r, n);
    if (!ids.insert(r.id).second) {
      throw DataError("row " + std::to_string(n) + ": duplicate id '" + r.id + "'");
    }
    ds.records.push_back(std::move(r));
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string to_csv(const Dataset& ds) {
  std::string out = kCsvHeader;
  out.push_back('\n');
  for (const auto& r : ds.records) {
    out += csv_escape(r.id);
    out.push_back(',');
    out += std::to_string(r.age);
    out.push_back(',');
    out += std::to_string(r.age_range_lower);
    out.push_back(',');
    out += std::to_string(r.age_range_upper);
    out.push_back(',');
    out += to_string(r.gender);
    out.push_back(',');
    out += std::to_string(r.income_category);
    out.push_back(',');
    out += to_string(r.locality);
    out.push_back(',');
    out += std::to_string(r.other_product_id);
    out.push_back(',');
    out += std::to_string(r.sentiment);
    out.push_back(',');
    out += csv_escape(r.review);
    out.push_back('\n');
  }
  return out;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path.string());
  out << to_csv(ds);
  if (!out) throw DataError("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Split

std::vector<std::size_t> split_test_positions(std::size_t n, const SplitSpec& spec) {
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
    throw UsageError("test_fraction must be in (0, 1)");
  }
  if (n < 2) throw DataError("dataset must contain at least 2 records to split");
  const auto test_count = static_cast<std::size_t>(
      std::llround(spec.test_fraction * static_cast<double>(n)));
  if (test_count == 0 || test_count >= n) {
    throw DataError("split would leave an empty train or test side");
  }
  std::vector<std::size_t> positions(n);
  for (std::size_t i = 0; i < n; ++i) positions[i] = i;
  std::mt19937_64 rng(spec.seed);
  shuffle(positions, rng);
  positions.resize(test_count);
  std::sort(positions.begin(), positions.end());
  return positions;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
  const auto test_positions = split_test_positions(ds.size(), spec);
  Dataset train, test;
  test.records.reserve(test_positions.size());
  train.records.reserve(ds.size() - test_positions.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (next < test_positions.size() && test_positions[next] == i) {
      test.records.push_back(ds.records[i]);
      ++next;
    } else {
      train.records.push_back(ds.records[i]);
    }
  }
  return {std::move(train), std::move(test)};
}

// ---------------------------------------------------------------------------
// Synthetic data

namespace {

// Word pools for review synthesis. Core words are drawn more often so that
// each polarity has a few highly frequent, highly indicative terms.
const std::array<const char*, 3> kPositiveCore = {"amazing", "great", "excellent"};
const std::array<const char*, 22> kPositiveMore = {
    "wonderful", "fantastic",   "superb",   "outstanding", "impressive", "reliable",
    "helpful",   "smooth",      "brilliant", "pleasant",    "friendly",   "quick",
    "affordable", "painless",   "responsive", "trustworthy", "clear",      "generous",
    "fair",      "valuable",    "good",      "dependable"};
const std::array<const char*, 3> kNegativeCore = {"terrible", "bad", "awful"};
const std::array<const char*, 22> kNegativeMore = {
    "horrible",  "poor",       "disappointing", "useless",  "slow",      "confusing",
    "misleading", "frustrating", "overpriced",   "unreliable", "rude",     "dreadful",
    "pathetic",  "worthless",  "annoying",      "stressful", "shady",     "clunky",
    "unhelpful", "evasive",    "appalling",     "infuriating"};
const std::array<const char*, 26> kNouns = {
    "insurance", "product",  "policy",   "claim",   "premium", "coverage", "agent",
    "service",   "company",  "plan",     "support", "process", "paperwork", "renewal",
    "quote",     "deductible", "experience", "staff", "team",    "price",    "rate",
    "office",    "website",  "app",      "branch",  "payout"};
const std::array<const char*, 6> kOpeners = {"the",   "my",          "this",
                                             "their", "overall the", "honestly the"};
const std::array<const char*, 6> kIntensifiers = {"very", "really", "quite", "so",
                                                  "truly", "absolutely"};

template <std::size_t N>
const char* pick(std::mt19937_64& rng, const std::array<const char*, N>& pool) {
  return pool[bounded(rng, N)];
}

void append_words(std::string& s, const char* words) {
  if (!s.empty()) s.push_back(' ');
  s += words;
}

const char* plain_adjective(std::mt19937_64& rng, bool positive) {
  if (positive) {
    return bounded(rng, 10) < 6 ? pick(rng, kPositiveCore) : pick(rng, kPositiveMore);
  }
  return bounded(rng, 10) < 6 ? pick(rng, kNegativeCore) : pick(rng, kNegativeMore);
}

// One sentence of lowercase words. Negative sentences sometimes use a
// negation pattern ("not good", "never helpful") instead of a negative word,
// mirroring how real reviewers phrase mild complaints.
std::string make_sentence(std::mt19937_64& rng, int sentiment) {
  const bool positive = sentiment == 1;
  std::string s;

  if (bounded(rng, 4) == 0) {
    // "it is [intensifier] <adjective> <noun>"
    append_words(s, "it is");
    if (bounded(rng, 3) == 0) append_words(s, pick(rng, kIntensifiers));
    append_words(s, plain_adjective(rng, positive));
    append_words(s, pick(rng, kNouns));
    return s;
  }

  // "<opener> <noun> was [intensifier] <sentiment phrase> [and the ...]"
  append_words(s, pick(rng, kOpeners));
  append_words(s, pick(rng, kNouns));
  append_words(s, "was");
  if (bounded(rng, 3) == 0) append_words(s, pick(rng, kIntensifiers));

  if (!positive && bounded(rng, 10) < 3) {
    const std::uint64_t variant = bounded(rng, 3);
    if (variant == 0) {
      append_words(s, "not that good");
    } else if (variant == 1) {
      append_words(s, "not");
      append_words(s, bounded(rng, 2) == 0 ? pick(rng, kPositiveCore)
                                           : pick(rng, kPositiveMore));
    } else {
      append_words(s, "never");
      append_words(s, pick(rng, kPositiveMore));
    }
  } else {
    append_words(s, plain_adjective(rng, positive));
  }

  if (bounded(rng, 2) == 0) {
    append_words(s, "and the");
    append_words(s, pick(rng, kNouns));
    append_words(s, "was");
    append_words(s, plain_adjective(rng, positive));
  }

  // Small amount of cross-polarity leakage keeps the corpus from being
  // perfectly separable.
  if (bounded(rng, 100) < 3) {
    append_words(s, "though the");
    append_words(s, pick(rng, kNouns));
    append_words(s, "was");
    append_words(s, positive ? pick(rng, kNegativeMore) : pick(rng, kPositiveMore));
  }
  return s;
}

std::string make_review(std::mt19937_64& rng, int sentiment) {
  const std::uint64_t n_sentences = 1 + bounded(rng, 3);
  std::string review;
  for (std::uint64_t i = 0; i < n_sentences; ++i) {
    std::string sentence = make_sentence(rng, sentiment);
    sentence[0] = static_cast<char>(sentence[0] - 'a' + 'A');
    if (i > 0) review += bounded(rng, 10) == 0 ? "<br />" : " ";
    review += sentence;
    review.push_back('.');
  }
  return review;
}

struct FixtureTuple {
  static bool matches(const CustomerRecord& r) {
    return r.age_range_lower == 40 && r.age_range_upper == 45 &&
           r.gender == Gender::M && r.income_category == 2 &&
           r.locality == Locality::City && r.sentiment == 1;
  }
};

}  // namespace

Dataset generate_synthetic(std::size_t rows, std::uint64_t seed, bool paper_fixture) {
  if (rows < 1) throw UsageError("rows must be >= 1");
  constexpr std::size_t kFixtureRows = 25000;
  constexpr std::size_t kFixtureMatches = 153;
  if (paper_fixture && rows != kFixtureRows) {
    throw UsageError("paper fixture requires exactly 25000 rows");
  }

  std::mt19937_64 rng(splitmix64(seed));

  // Which positions hold the fixture rows, and which product each carries.
  std::vector<bool> is_fixture(rows, false);
  std::vector<int> fixture_products;
  if (paper_fixture) {
    std::vector<std::size_t> positions(rows);
    for (std::size_t i = 0; i < rows; ++i) positions[i] = i;
    shuffle(positions, rng);
    for (std::size_t i = 0; i < kFixtureMatches; ++i) is_fixture[positions[i]] = true;

    const std::array<std::pair<int, int>, 5> counts = {
        {{4, 47}, {5, 46}, {3, 35}, {2, 21}, {6, 4}}};
    for (const auto& [product, freq] : counts) {
      fixture_products.insert(fixture_products.end(), freq, product);
    }
    shuffle(fixture_products, rng);
  }

  // Review-corpus style ids: <doc>_<rating>, rating 7-10 for positive
  // reviews and 1-4 for negative ones. The doc part is a permutation of the
  // row indices, which keeps ids unique.
  std::vector<std::size_t> doc_ids(rows);
  for (std::size_t i = 0; i < rows; ++i) doc_ids[i] = i;
  shuffle(doc_ids, rng);

  Dataset ds;
  ds.records.reserve(rows);
  std::size_t next_fixture_product = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    CustomerRecord r;
    if (paper_fixture && is_fixture[i]) {
      r.age = 40 + static_cast<int>(bounded(rng, 5));  // bucket 40-45
      r.gender = Gender::M;
      r.income_category = 2;
      r.locality = Locality::City;
      r.sentiment = 1;
      r.other_product_id = fixture_products[next_fixture_product++];
    } else {
      r.age = 18 + static_cast<int>(bounded(rng, 58));  // 18-75
      r.gender = bounded(rng, 2) == 0 ? Gender::M : Gender::F;
      r.income_category = 1 + static_cast<int>(bounded(rng, 2));
      r.locality = bounded(rng, 2) == 0 ? Locality::City : Locality::Outskirts;
      r.sentiment = static_cast<int>(bounded(rng, 2));
      r.other_product_id = 1 + static_cast<int>(bounded(rng, 6));
      std::tie(r.age_range_lower, r.age_range_upper) = age_bucket(r.age);
      if (paper_fixture && FixtureTuple::matches(r)) {
        // Only the designated 153 rows may match the fixture tuple.
        r.locality = Locality::Outskirts;
      }
    }
    std::tie(r.age_range_lower, r.age_range_upper) = age_bucket(r.age);
    r.review = make_review(rng, r.sentiment);
    const std::uint64_t rating =
        r.sentiment == 1 ? 7 + bounded(rng, 4) : 1 + bounded(rng, 4);
    r.id = std::to_string(doc_ids[i]) + "_" + std::to_string(rating);
    ds.records.push_back(std::move(r));
  }
  return ds;
}

}  // namespace sentirec
