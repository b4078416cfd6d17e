#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sentirec {

enum class Gender { M, F };
enum class Locality { City, Outskirts };

std::string to_string(Gender g);
std::string to_string(Locality l);
Gender parse_gender(const std::string& s);      // throws DataError
Locality parse_locality(const std::string& s);  // throws DataError

// One row of the customer table: identity, demographics, the id of another
// product this customer already purchased, the review and its polarity label.
struct CustomerRecord {
  std::string id;
  int age = 0;
  int age_range_lower = 0;
  int age_range_upper = 0;
  Gender gender = Gender::M;
  int income_category = 1;
  Locality locality = Locality::City;
  int other_product_id = 1;
  int sentiment = 0;  // 0 or 1
  std::string review;
};

// A prospective customer: attributes plus the feedback line to classify.
struct QueryCustomer {
  int age = 0;
  Gender gender = Gender::M;
  int income_category = 1;
  Locality locality = Locality::City;
  std::string feedback;
  int reviewed_product_id = 1;
};

struct Dataset {
  std::vector<CustomerRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct SplitSpec {
  double test_fraction = 0.3;
  std::uint64_t seed = 42;
};

// 5-year half-open age bucket: lower = 5*floor(age/5), upper = lower + 5.
// Negative age throws DataError.
std::pair<int, int> age_bucket(int age);

// Canonical CSV header, verbatim.
extern const char* const kCsvHeader;

// RFC 4180 CSV in/out. load_csv validates the header, every cell, per-record
// invariants (including the age-bucket relation) and id uniqueness.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(const std::string& text);
std::string to_csv(const Dataset& ds);
void save_csv(const Dataset& ds, const std::filesystem::path& path);

// Seeded uniform shuffle split. The chosen test positions depend only on
// (size, spec), never on record contents. Relative record order is preserved
// on both sides. |test| = round(test_fraction * size).
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

// The positions (ascending) that split() sends to the test side.
std::vector<std::size_t> split_test_positions(std::size_t n, const SplitSpec& spec);

// Seeded synthetic customer table. Attribute domains: ages 18-75, gender M/F,
// income {1,2}, locality {City,Outskirts}, products 1-6; review text drawn
// from a built-in lexicon consistent with the sentiment label. With
// paper_fixture (rows must be 25000), exactly 153 rows carry the tuple
// (age range 40-45, M, income 2, City, sentiment 1), with product counts
// {4:47, 5:46, 3:35, 2:21, 6:4}, and no other row matches that tuple.
Dataset generate_synthetic(std::size_t rows, std::uint64_t seed, bool paper_fixture);

}  // namespace sentirec
