#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catclust/clustering.hpp"
#include "catclust/dataset.hpp"
#include "catclust/space.hpp"

namespace catclust {

enum class Algorithm { kmeans, fcm, hierarchical, kmodes };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kmeans: return "kmeans";
    case Algorithm::fcm: return "fcm";
    case Algorithm::hierarchical: return "hierarchical";
    case Algorithm::kmodes: return "kmodes";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "kmeans") return Algorithm::kmeans;
  if (name == "fcm") return Algorithm::fcm;
  if (name == "hierarchical") return Algorithm::hierarchical;
  if (name == "kmodes") return Algorithm::kmodes;
  return std::nullopt;
}

/// counts[i][j] = objects shared by produced cluster i and true class j.
struct ContingencyTable {
  std::size_t s = 0;        // produced clusters
  std::size_t k_prime = 0;  // true classes
  std::vector<long long> counts;

  long long at(std::size_t i, std::size_t j) const { return counts[i * k_prime + j]; }
};

inline ContingencyTable contingency(const HardAssignment& assignment,
                                    const std::vector<int>& labels) {
  if (assignment.labels.size() != labels.size()) {
    throw std::invalid_argument("contingency: assignment and labels lengths differ");
  }
  int max_class = -1;
  for (int l : labels) max_class = std::max(max_class, l);
  ContingencyTable t;
  t.s = static_cast<std::size_t>(assignment.k);
  t.k_prime = static_cast<std::size_t>(max_class + 1);
  t.counts.assign(t.s * t.k_prime, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    t.counts[static_cast<std::size_t>(assignment.labels[i]) * t.k_prime +
             static_cast<std::size_t>(labels[i])]++;
  }
  return t;
}

/// Accuracy as the sum over produced clusters of their largest single-class
/// member count, divided by N. No one-to-one cluster/class matching is
/// performed, so two clusters may both claim the same class.
inline double accuracy(const HardAssignment& assignment, const std::vector<int>& labels) {
  if (labels.empty()) throw std::invalid_argument("accuracy: empty label list");
  const auto t = contingency(assignment, labels);
  long long correct = 0;
  for (std::size_t i = 0; i < t.s; ++i) {
    long long row_max = 0;
    for (std::size_t j = 0; j < t.k_prime; ++j) row_max = std::max(row_max, t.at(i, j));
    correct += row_max;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

// ---------------------------------------------------------------------------
// benchmark protocol
// ---------------------------------------------------------------------------

struct ExperimentSpec {
  Algorithm algorithm = Algorithm::kmeans;
  DistanceKind distance = DistanceKind::sbd;  // ignored for kmodes
  int restarts = 100;
  std::uint64_t master_seed = 0;
  ClusterConfig config;  // k = 0 means "use the number of classes"
};

struct ReportCell {
  std::string dataset;
  Algorithm algorithm = Algorithm::kmeans;
  std::optional<DistanceKind> distance;  // empty for kmodes
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  int restarts = 0;
  std::uint64_t master_seed = 0;
  double seconds = 0.0;
  bool best = false;
  std::string error;  // non-empty when the cell failed
};

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Per-restart seed: the restart index mixed into the master seed through
/// splitmix64, so restarts are independent and the whole report is a pure
/// function of (dataset, spec).
inline std::uint64_t restart_seed(std::uint64_t master_seed, int restart) {
  return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(restart) + 1));
}

/// One benchmark cell: `restarts` seeded fits scored with the accuracy
/// measure, reported as mean and population standard deviation.
inline ReportCell run_experiment(const CategoricalDataset& ds, const ExperimentSpec& spec,
                                 const std::string& dataset_name = "") {
  if (!ds.labels) throw std::invalid_argument("run_experiment: dataset has no class labels");
  if (spec.restarts < 1) throw std::invalid_argument("run_experiment: restarts must be >= 1");

  ClusterConfig cfg = spec.config;
  if (cfg.k == 0) cfg.k = static_cast<int>(ds.n_classes());

  const auto start = std::chrono::steady_clock::now();

  Points embedding;
  if (spec.algorithm != Algorithm::kmodes) {
    embedding = build_distance(build_similarity(ds), spec.distance).rows();
  }

  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(spec.restarts));
  for (int r = 0; r < spec.restarts; ++r) {
    cfg.seed = restart_seed(spec.master_seed, r);
    HardAssignment assignment;
    switch (spec.algorithm) {
      case Algorithm::kmeans: assignment = kmeans_fit(embedding, cfg).assignment; break;
      case Algorithm::fcm: assignment = fcm_fit(embedding, cfg).assignment; break;
      case Algorithm::hierarchical: assignment = hierarchical_fit(embedding, cfg).assignment; break;
      case Algorithm::kmodes: assignment = kmodes_fit(ds, cfg).assignment; break;
    }
    scores.push_back(accuracy(assignment, *ds.labels));
  }

  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  if (*lo != *hi) {  // identical scores report an exact zero deviation
    for (double s : scores) var += (s - mean) * (s - mean);
    var /= static_cast<double>(scores.size());
  }

  ReportCell cell;
  cell.dataset = dataset_name;
  cell.algorithm = spec.algorithm;
  if (spec.algorithm != Algorithm::kmodes) cell.distance = spec.distance;
  cell.mean_accuracy = mean;
  cell.std_accuracy = std::sqrt(var);
  cell.restarts = spec.restarts;
  cell.master_seed = spec.master_seed;
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

}  // namespace catclust
