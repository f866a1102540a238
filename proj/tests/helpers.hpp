#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catclust/dataset.hpp"

namespace testutil {

inline catclust::CategoricalDataset make_dataset(const std::string& csv,
                                                 const catclust::IngestOptions& opts = {}) {
  std::istringstream in(csv);
  return catclust::load_dataset(in, opts);
}

// Random categorical dataset as CSV text, categories "a0".."a<cats-1>" per column.
inline std::string random_csv(std::mt19937& rng, std::size_t n, std::size_t m,
                              std::size_t max_categories = 4) {
  std::uniform_int_distribution<std::size_t> cat(0, max_categories - 1);
  std::ostringstream out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out << (j ? "," : "") << "a" << cat(rng);
    out << "\n";
  }
  return out.str();
}

inline std::vector<std::vector<double>> random_points(std::mt19937& rng, std::size_t n,
                                                      std::size_t dim, double spread = 10.0) {
  std::uniform_real_distribution<double> coord(0.0, spread);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = coord(rng);
  return pts;
}

// Three well-separated blobs in the plane, labels returned alongside.
inline std::pair<std::vector<std::vector<double>>, std::vector<int>> blob_points(std::mt19937& rng,
                                                                                 std::size_t per_blob) {
  const double centers[3][2] = {{0.0, 0.0}, {50.0, 0.0}, {0.0, 50.0}};
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::vector<double>> pts;
  std::vector<int> labels;
  for (int b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      pts.push_back({centers[b][0] + noise(rng), centers[b][1] + noise(rng)});
      labels.push_back(b);
    }
  }
  return {pts, labels};
}

}  // namespace testutil
