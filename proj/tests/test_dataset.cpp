#include <algorithm>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "catclust/dataset.hpp"
#include "helpers.hpp"

using catclust::CategoricalDataset;
using catclust::IngestOptions;
using catclust::category_domain;
using catclust::load_dataset;
using testutil::make_dataset;

static const std::string kFourObjects =
    "High,Medium,High\n"
    "Low,Low,High\n"
    "High,High,Low\n"
    "Medium,Low,High\n";

static IngestOptions unlabeled() {
  IngestOptions opts;
  opts.label_column = IngestOptions::kNoLabel;
  return opts;
}

TEST_CASE("the four-object example ingests as 4 objects x 3 attributes") {
  const auto ds = make_dataset(kFourObjects, unlabeled());
  REQUIRE(ds.n_objects == 4);
  REQUIRE(ds.n_attributes == 3);
  REQUIRE_FALSE(ds.labels.has_value());

  // Domains in first-appearance order.
  REQUIRE(category_domain(ds, 0) == std::vector<std::string>{"High", "Low", "Medium"});
  REQUIRE(category_domain(ds, 1) == std::vector<std::string>{"Medium", "Low", "High"});
  REQUIRE(category_domain(ds, 2) == std::vector<std::string>{"High", "Low"});
}

TEST_CASE("category_domain rejects out-of-range attributes") {
  const auto ds = make_dataset(kFourObjects, unlabeled());
  REQUIRE_THROWS_AS(category_domain(ds, 3), std::out_of_range);
}

TEST_CASE("missing token becomes an ordinary category") {
  const auto ds = make_dataset("x,?,b\nx,q,b\ny,?,c\n", unlabeled());
  REQUIRE(ds.n_objects == 3);
  const auto& domain = category_domain(ds, 1);
  REQUIRE(std::count(domain.begin(), domain.end(), "?") == 1);
  REQUIRE(ds.decode(0, 1) == "?");
  REQUIRE(ds.code(0, 1) == ds.code(2, 1));
}

TEST_CASE("empty stream is an ingestion error") {
  REQUIRE_THROWS_AS(make_dataset("", unlabeled()), std::runtime_error);
  REQUIRE_THROWS_AS(make_dataset("\n\n  \n", unlabeled()), std::runtime_error);
}

TEST_CASE("ragged rows are rejected with the line number") {
  try {
    make_dataset("a,b,c\na,b\n", unlabeled());
    FAIL("expected an ingestion error");
  } catch (const std::runtime_error& e) {
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("label column out of range is a configuration error") {
  IngestOptions opts;
  opts.label_column = 5;
  REQUIRE_THROWS_AS(make_dataset("a,b\nc,d\n", opts), std::invalid_argument);
}

TEST_CASE("default label column is the last one") {
  const auto ds = make_dataset("red,small,yes\nblue,big,no\nred,big,yes\n");
  REQUIRE(ds.n_attributes == 2);
  REQUIRE(ds.labels.has_value());
  REQUIRE(ds.class_names == std::vector<std::string>{"yes", "no"});
  REQUIRE(*ds.labels == std::vector<int>{0, 1, 0});
}

TEST_CASE("header line is skipped when configured") {
  IngestOptions opts = unlabeled();
  opts.has_header = true;
  const auto ds = make_dataset("colA,colB\nx,y\n", opts);
  REQUIRE(ds.n_objects == 1);
  REQUIRE(ds.decode(0, 0) == "x");
}

TEST_CASE("round-trip: decoding reproduces the input strings") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto csv = testutil::random_csv(rng, 8, 4);
    const auto ds = make_dataset(csv, unlabeled());

    std::istringstream in(csv);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
      auto fields = catclust::detail::split_line(line, ',');
      for (std::size_t m = 0; m < ds.n_attributes; ++m) REQUIRE(ds.decode(row, m) == fields[m]);
      ++row;
    }
  }
}

TEST_CASE("per-attribute encoding is injective") {
  std::mt19937 rng(12);
  const auto ds = make_dataset(testutil::random_csv(rng, 15, 3), unlabeled());
  for (std::size_t m = 0; m < ds.n_attributes; ++m) {
    const auto& domain = category_domain(ds, m);
    for (std::size_t i = 0; i < ds.n_objects; ++i) {
      for (std::size_t j = 0; j < ds.n_objects; ++j) {
        const bool same_code = ds.code(i, m) == ds.code(j, m);
        REQUIRE(same_code == (ds.decode(i, m) == ds.decode(j, m)));
      }
    }
    // Every domain entry appears at least once in the column.
    for (std::size_t v = 0; v < domain.size(); ++v) {
      bool found = false;
      for (std::size_t i = 0; i < ds.n_objects; ++i) found = found || ds.code(i, m) == static_cast<int>(v);
      REQUIRE(found);
    }
  }
}

TEST_CASE("shuffling rows preserves the decoded multiset of rows") {
  std::mt19937 rng(13);
  const auto csv = testutil::random_csv(rng, 10, 3);

  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  auto shuffled = lines;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  auto decode_rows = [](const CategoricalDataset& ds) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < ds.n_objects; ++i) {
      std::string row;
      for (std::size_t m = 0; m < ds.n_attributes; ++m) row += ds.decode(i, m) + ",";
      rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };

  std::string shuffled_csv;
  for (const auto& line : shuffled) shuffled_csv += line + "\n";
  REQUIRE(decode_rows(make_dataset(csv, unlabeled())) ==
          decode_rows(make_dataset(shuffled_csv, unlabeled())));
}
