#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catclust/dataset.hpp"

namespace catclust {

enum class Linkage { single, complete, average, ward };

inline const char* to_string(Linkage l) {
  switch (l) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    case Linkage::ward: return "ward";
  }
  return "?";
}

inline std::optional<Linkage> parse_linkage(const std::string& name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  if (name == "ward") return Linkage::ward;
  return std::nullopt;
}

struct ClusterConfig {
  int k = 0;
  int max_iterations = 300;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  int n_init = 10;                      // initializations per fit, best kept by objective
  double fuzzifier = 2.0;               // FCM only
  Linkage linkage = Linkage::average;   // hierarchical only
};

/// Crisp labels in [0, k). Every fit keeps all k clusters non-empty.
struct HardAssignment {
  std::vector<int> labels;
  int k = 0;
};

using Points = std::vector<std::vector<double>>;

namespace detail {

inline void check_fit_config(const ClusterConfig& cfg, std::size_t n) {
  if (cfg.k < 1) throw std::invalid_argument("k must be at least 1 (got " + std::to_string(cfg.k) + ")");
  if (static_cast<std::size_t>(cfg.k) > n) {
    throw std::invalid_argument("k = " + std::to_string(cfg.k) + " exceeds the number of objects (" +
                                std::to_string(n) + ")");
  }
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (cfg.tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (cfg.n_init < 1) throw std::invalid_argument("n_init must be at least 1");
}

inline double squared_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

// k distinct indices from [0, n), order fixed by the seeded generator.
// Rows with identical values count as one candidate while enough distinct
// values exist, so duplicate objects do not produce coincident centers.
template <typename RowEqual>
inline std::vector<std::size_t> sample_distinct(std::size_t n, int k, std::mt19937_64& rng,
                                                RowEqual&& equal) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> skipped;
  for (std::size_t i : idx) {
    if (chosen.size() == static_cast<std::size_t>(k)) break;
    bool duplicate = false;
    for (std::size_t c : chosen) {
      if (equal(i, c)) {
        duplicate = true;
        break;
      }
    }
    (duplicate ? skipped : chosen).push_back(i);
  }
  for (std::size_t i : skipped) {
    if (chosen.size() == static_cast<std::size_t>(k)) break;
    chosen.push_back(i);
  }
  return chosen;
}

// Nearest center by squared Euclidean distance, ties to the lowest index.
inline int nearest_center(const std::vector<double>& p, const Points& centers) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = squared_euclidean(p, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// k-means (Lloyd iteration)
// ---------------------------------------------------------------------------

struct KMeansResult {
  HardAssignment assignment;
  Points centers;
  double wcss = 0.0;
  std::vector<double> wcss_history;  // one entry per assignment pass
  int iterations = 0;
};

/// Lloyd's algorithm on the embedding rows. Runs n_init seeded
/// initializations (centers at k distinct rows) and keeps the run with the
/// lowest within-cluster sum of squares; an empty cluster is reseeded to the
/// row farthest from its center, followed by a reassignment pass.
inline KMeansResult kmeans_fit(const Points& points, const ClusterConfig& cfg) {
  const std::size_t n = points.size();
  detail::check_fit_config(cfg, n);
  const int k = cfg.k;

  std::mt19937_64 rng(cfg.seed);
  auto row_equal = [&](std::size_t a, std::size_t b) { return points[a] == points[b]; };

  KMeansResult best;
  for (int init = 0; init < cfg.n_init; ++init) {
    Points centers;
    for (auto idx : detail::sample_distinct(n, k, rng, row_equal)) centers.push_back(points[idx]);

    std::vector<int> labels(n, -1), prev;
    KMeansResult result;

    auto assign_all = [&]() {
      for (std::size_t i = 0; i < n; ++i) labels[i] = detail::nearest_center(points[i], centers);
    };
    auto wcss_now = [&]() {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        sum += detail::squared_euclidean(points[i], centers[static_cast<std::size_t>(labels[i])]);
      return sum;
    };

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      assign_all();

      // Reseed empty clusters until every cluster has a member.
      for (int repair = 0; repair < k; ++repair) {
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int l : labels) ++counts[static_cast<std::size_t>(l)];
        bool any_empty = false;
        for (int c = 0; c < k; ++c) {
          if (counts[static_cast<std::size_t>(c)] > 0) continue;
          any_empty = true;
          std::size_t farthest = 0;
          double far_d = -1.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double d = detail::squared_euclidean(points[i], centers[static_cast<std::size_t>(c)]);
            if (d > far_d) {
              far_d = d;
              farthest = i;
            }
          }
          centers[static_cast<std::size_t>(c)] = points[farthest];
        }
        if (!any_empty) break;
        assign_all();
      }

      result.wcss_history.push_back(wcss_now());
      ++result.iterations;
      if (labels == prev) break;
      prev = labels;

      // Centers move to the coordinate-wise mean of their members.
      const std::size_t dim = points[0].size();
      Points sums(static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
      std::vector<int> counts(static_cast<std::size_t>(k), 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        for (std::size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
      }
      for (int c = 0; c < k; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        for (std::size_t d = 0; d < dim; ++d) centers[cc][d] = sums[cc][d] / counts[cc];
      }
    }

    result.wcss = wcss_now();
    result.assignment = {std::move(labels), k};
    result.centers = std::move(centers);
    if (init == 0 || result.wcss < best.wcss) best = std::move(result);
  }
  return best;
}

// ---------------------------------------------------------------------------
// fuzzy c-means
// ---------------------------------------------------------------------------

struct FcmResult {
  std::vector<std::vector<double>> memberships;  // n x k, unit row sums
  HardAssignment assignment;
  Points centers;
  std::vector<double> objective_history;
  int iterations = 0;
};

/// Alternating optimization: memberships from center distances, centers as
/// membership-weighted means. A row coincident with a center gets a one-hot
/// membership row. Stops when the largest membership change drops below the
/// tolerance; the best of n_init seeded starts is kept by final objective.
inline FcmResult fcm_fit(const Points& points, const ClusterConfig& cfg) {
  const std::size_t n = points.size();
  detail::check_fit_config(cfg, n);
  if (cfg.fuzzifier <= 1.0) throw std::invalid_argument("fuzzifier must be greater than 1");
  const auto k = static_cast<std::size_t>(cfg.k);

  std::mt19937_64 rng(cfg.seed);
  auto row_equal = [&](std::size_t a, std::size_t b) { return points[a] == points[b]; };

  FcmResult best_result;
  for (int init = 0; init < cfg.n_init; ++init) {
    Points centers;
    for (auto idx : detail::sample_distinct(n, cfg.k, rng, row_equal)) centers.push_back(points[idx]);

    std::vector<std::vector<double>> u(n, std::vector<double>(k, 0.0));
    std::vector<std::vector<double>> d2(n, std::vector<double>(k, 0.0));
    const std::size_t dim = points[0].size();
    FcmResult result;

    auto compute_distances = [&]() {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) d2[i][c] = detail::squared_euclidean(points[i], centers[c]);
    };
    auto objective = [&]() {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) sum += std::pow(u[i][c], cfg.fuzzifier) * d2[i][c];
      return sum;
    };

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      compute_distances();

      double max_change = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(k, 0.0);
        std::size_t zero_at = k;
        for (std::size_t c = 0; c < k; ++c) {
          if (d2[i][c] == 0.0) {
            zero_at = c;
            break;
          }
        }
        if (zero_at < k) {
          row[zero_at] = 1.0;
        } else {
          // u_ic proportional to (1 / d_ic^2)^(1/(m-1)), normalized per row.
          double total = 0.0;
          for (std::size_t c = 0; c < k; ++c) {
            row[c] = std::pow(d2[i][c], -1.0 / (cfg.fuzzifier - 1.0));
            total += row[c];
          }
          for (std::size_t c = 0; c < k; ++c) row[c] /= total;
        }
        for (std::size_t c = 0; c < k; ++c) {
          max_change = std::max(max_change, std::abs(row[c] - u[i][c]));
          u[i][c] = row[c];
        }
      }
      ++result.iterations;

      // Weighted means; a cluster with zero total weight keeps its center.
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> num(dim, 0.0);
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double w = std::pow(u[i][c], cfg.fuzzifier);
          den += w;
          for (std::size_t d = 0; d < dim; ++d) num[d] += w * points[i][d];
        }
        if (den > 0.0) {
          for (std::size_t d = 0; d < dim; ++d) centers[c][d] = num[d] / den;
        }
      }

      compute_distances();
      result.objective_history.push_back(objective());
      if (iter > 0 && max_change <= cfg.tolerance) break;
    }

    // Crisp labels by argmax membership, ties to the lowest cluster index.
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double best = -1.0;
      for (std::size_t c = 0; c < k; ++c) {
        if (u[i][c] > best) {
          best = u[i][c];
          labels[i] = static_cast<int>(c);
        }
      }
    }

    // The argmax can leave a cluster empty; move in the row with the strongest
    // membership for it, drawn from clusters that keep at least one member.
    std::vector<int> counts(k, 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t donor = n;
      double best = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(labels[i])] <= 1) continue;
        if (u[i][c] > best) {
          best = u[i][c];
          donor = i;
        }
      }
      if (donor < n) {
        --counts[static_cast<std::size_t>(labels[donor])];
        labels[donor] = static_cast<int>(c);
        ++counts[c];
      }
    }

    result.memberships = std::move(u);
    result.assignment = {std::move(labels), cfg.k};
    result.centers = std::move(centers);
    if (init == 0 ||
        result.objective_history.back() < best_result.objective_history.back()) {
      best_result = std::move(result);
    }
  }
  return best_result;
}

// ---------------------------------------------------------------------------
// agglomerative hierarchical clustering
// ---------------------------------------------------------------------------

struct HierarchicalResult {
  HardAssignment assignment;
  std::vector<double> merge_heights;  // ward heights are squared distances
};

/// Greedy agglomeration over pairwise Euclidean distances with Lance-Williams
/// updates; merges stop once k clusters remain. Ties resolve to the lowest
/// cluster-index pair, so runs are deterministic.
inline HierarchicalResult hierarchical_fit(const Points& points, const ClusterConfig& cfg) {
  const std::size_t n = points.size();
  detail::check_fit_config(cfg, n);
  const auto k = static_cast<std::size_t>(cfg.k);

  // Ward runs on squared distances (its Lance-Williams form needs them).
  const bool squared = cfg.linkage == Linkage::ward;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = detail::squared_euclidean(points[i], points[j]);
      if (!squared) v = std::sqrt(v);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }

  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> nn(n, 0);

  auto recompute_nn = [&](std::size_t c) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = c;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == c || !active[j]) continue;
      if (d[c * n + j] < best) {
        best = d[c * n + j];
        best_j = j;
      }
    }
    nn[c] = best_j;
  };
  for (std::size_t i = 0; i < n; ++i) recompute_nn(i);

  HierarchicalResult result;
  std::vector<int> parent_label(n);
  std::iota(parent_label.begin(), parent_label.end(), 0);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  for (std::size_t merges = 0; merges + k < n; ++merges) {
    // Globally closest active pair, lowest indices on ties.
    std::size_t a = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || static_cast<std::size_t>(nn[i]) == i) continue;
      if (d[i * n + nn[i]] < best) {
        best = d[i * n + nn[i]];
        a = i;
      }
    }
    const std::size_t p = std::min(a, nn[a]);
    const std::size_t q = std::max(a, nn[a]);
    result.merge_heights.push_back(d[p * n + q]);

    const double dab = d[p * n + q];
    const auto na = static_cast<double>(size[p]);
    const auto nb = static_cast<double>(size[q]);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == p || c == q) continue;
      const double dac = d[p * n + c];
      const double dbc = d[q * n + c];
      double v = 0.0;
      switch (cfg.linkage) {
        case Linkage::single: v = std::min(dac, dbc); break;
        case Linkage::complete: v = std::max(dac, dbc); break;
        case Linkage::average: v = (na * dac + nb * dbc) / (na + nb); break;
        case Linkage::ward: {
          const auto nc = static_cast<double>(size[c]);
          v = ((na + nc) * dac + (nb + nc) * dbc - nc * dab) / (na + nb + nc);
          break;
        }
      }
      d[p * n + c] = v;
      d[c * n + p] = v;
    }

    active[q] = false;
    size[p] += size[q];
    members[p].insert(members[p].end(), members[q].begin(), members[q].end());
    members[q].clear();

    recompute_nn(p);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == p) continue;
      if (nn[c] == p || nn[c] == q) {
        recompute_nn(c);
      } else if (d[c * n + p] < d[c * n + nn[c]] ||
                 (d[c * n + p] == d[c * n + nn[c]] && p < nn[c])) {
        nn[c] = p;
      }
    }
  }

  // Clusters are labeled in ascending order of their smallest member, which
  // is the storage index because merges always fold into the lower slot.
  std::vector<int> labels(n, -1);
  int next = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (!active[c]) continue;
    for (auto m : members[c]) labels[m] = next;
    ++next;
  }
  result.assignment = {std::move(labels), cfg.k};
  return result;
}

// ---------------------------------------------------------------------------
// k-modes baseline on raw categorical codes
// ---------------------------------------------------------------------------

struct KModesResult {
  HardAssignment assignment;
  std::vector<std::vector<int>> modes;  // k x M category codes
  long long cost = 0;                   // total attribute mismatches
  std::vector<long long> cost_history;
  int iterations = 0;
};

/// k-modes with 0-1 attribute mismatch distance and per-attribute majority
/// category as the cluster center. Empty clusters are reseeded with the
/// worst-fitting object; the best of n_init seeded starts is kept by cost.
inline KModesResult kmodes_fit(const CategoricalDataset& ds, const ClusterConfig& cfg) {
  const std::size_t n = ds.n_objects;
  const std::size_t m = ds.n_attributes;
  detail::check_fit_config(cfg, n);
  const auto k = static_cast<std::size_t>(cfg.k);

  auto mismatches = [&](std::size_t i, const std::vector<int>& mode) {
    int count = 0;
    for (std::size_t a = 0; a < m; ++a)
      if (ds.code(i, a) != mode[a]) ++count;
    return count;
  };

  std::mt19937_64 rng(cfg.seed);
  auto row_equal = [&](std::size_t a, std::size_t b) {
    for (std::size_t attr = 0; attr < m; ++attr) {
      if (ds.code(a, attr) != ds.code(b, attr)) return false;
    }
    return true;
  };
  KModesResult best_result;
  for (int init = 0; init < cfg.n_init; ++init) {
    std::vector<std::vector<int>> modes;
    for (auto idx : detail::sample_distinct(n, cfg.k, rng, row_equal)) {
      std::vector<int> mode(m);
      for (std::size_t a = 0; a < m; ++a) mode[a] = ds.code(idx, a);
      modes.push_back(std::move(mode));
    }

    std::vector<int> labels(n, -1), prev;
    KModesResult result;

    auto assign_all = [&]() {
      for (std::size_t i = 0; i < n; ++i) {
        int best = 0, best_d = std::numeric_limits<int>::max();
        for (std::size_t c = 0; c < k; ++c) {
          const int dist = mismatches(i, modes[c]);
          if (dist < best_d) {
            best_d = dist;
            best = static_cast<int>(c);
          }
        }
        labels[i] = best;
      }
    };
    auto total_cost = [&]() {
      long long sum = 0;
      for (std::size_t i = 0; i < n; ++i) sum += mismatches(i, modes[static_cast<std::size_t>(labels[i])]);
      return sum;
    };

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      assign_all();

      for (std::size_t repair = 0; repair < k; ++repair) {
        std::vector<int> counts(k, 0);
        for (int l : labels) ++counts[static_cast<std::size_t>(l)];
        bool any_empty = false;
        for (std::size_t c = 0; c < k; ++c) {
          if (counts[c] > 0) continue;
          any_empty = true;
          std::size_t worst = 0;
          int worst_d = -1;
          for (std::size_t i = 0; i < n; ++i) {
            const int dist = mismatches(i, modes[static_cast<std::size_t>(labels[i])]);
            if (dist > worst_d) {
              worst_d = dist;
              worst = i;
            }
          }
          for (std::size_t a = 0; a < m; ++a) modes[c][a] = ds.code(worst, a);
        }
        if (!any_empty) break;
        assign_all();
      }

      result.cost_history.push_back(total_cost());
      ++result.iterations;
      if (labels == prev) break;
      prev = labels;

      // Mode update: per attribute, the most frequent category among members,
      // frequency ties to the lowest category code.
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t a = 0; a < m; ++a) {
          std::vector<int> freq(ds.category_tables[a].size(), 0);
          for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<std::size_t>(labels[i]) == c) ++freq[static_cast<std::size_t>(ds.code(i, a))];
          }
          int best_code = modes[c][a];
          int best_freq = -1;
          for (std::size_t v = 0; v < freq.size(); ++v) {
            if (freq[v] > best_freq) {
              best_freq = freq[v];
              best_code = static_cast<int>(v);
            }
          }
          modes[c][a] = best_code;
        }
      }
    }

    result.cost = total_cost();
    result.assignment = {std::move(labels), cfg.k};
    result.modes = std::move(modes);
    if (init == 0 || result.cost < best_result.cost) best_result = std::move(result);
  }
  return best_result;
}

}  // namespace catclust
