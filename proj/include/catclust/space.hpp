#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "catclust/dataset.hpp"

namespace catclust {

enum class DistanceKind { sbd, euclidean, cosine, manhattan };

inline const char* to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::sbd: return "sbd";
    case DistanceKind::euclidean: return "euclidean";
    case DistanceKind::cosine: return "cosine";
    case DistanceKind::manhattan: return "manhattan";
  }
  return "?";
}

inline std::optional<DistanceKind> parse_distance_kind(const std::string& name) {
  if (name == "sbd") return DistanceKind::sbd;
  if (name == "euclidean") return DistanceKind::euclidean;
  if (name == "cosine") return DistanceKind::cosine;
  if (name == "manhattan") return DistanceKind::manhattan;
  return std::nullopt;
}

/// N x N attribute-match counts. Symmetric, diagonal = M, entries in [0, M].
struct SimilarityMatrix {
  std::size_t n = 0;
  std::size_t m_attributes = 0;
  std::vector<int> entries;  // row-major n x n

  int at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  std::vector<double> row(std::size_t i) const {
    return std::vector<double>(entries.begin() + static_cast<std::ptrdiff_t>(i * n),
                               entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  }
};

/// N x N object distances. Row i is object i's embedding vector.
struct DistanceMatrix {
  std::size_t n = 0;
  DistanceKind kind = DistanceKind::sbd;
  std::vector<double> entries;  // row-major n x n

  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i].assign(entries.begin() + static_cast<std::ptrdiff_t>(i * n),
                    entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    }
    return out;
  }
};

inline SimilarityMatrix build_similarity(const CategoricalDataset& ds) {
  const std::size_t n = ds.n_objects;
  const std::size_t m = ds.n_attributes;
  SimilarityMatrix s{n, m, std::vector<int>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    s.entries[i * n + i] = static_cast<int>(m);
    for (std::size_t j = i + 1; j < n; ++j) {
      int matches = 0;
      for (std::size_t a = 0; a < m; ++a) {
        if (ds.code(i, a) == ds.code(j, a)) ++matches;
      }
      s.entries[i * n + j] = matches;
      s.entries[j * n + i] = matches;
    }
  }
  return s;
}

namespace detail {
inline void check_lengths(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("distance: vector lengths differ (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
  }
}
}  // namespace detail

/// One coordinate's contribution to SBD: squared difference scaled down by the
/// product of the two values, so equal gaps at higher shared similarity count
/// for less. Denominator is 1 when either value is 0.
inline double sbd_term(double xi, double yi) {
  const double den = (xi > 0.0 && yi > 0.0) ? xi * yi : 1.0;
  const double diff = xi - yi;
  return diff * diff / den;
}

/// Similarity-based distance between two similarity rows.
inline double sbd(std::span<const double> x, std::span<const double> y) {
  detail::check_lengths(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += sbd_term(x[i], y[i]);
  return std::sqrt(sum);
}

/// Euclidean, cosine (sqrt(2(1 - cos)), cos clamped into [-1, 1]) or
/// Manhattan distance. The Manhattan form uses absolute differences.
inline double classic_distance(DistanceKind kind, std::span<const double> x,
                               std::span<const double> y) {
  detail::check_lengths(x, y);
  switch (kind) {
    case DistanceKind::euclidean: {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    case DistanceKind::cosine: {
      double dot = 0.0, nx = 0.0, ny = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
      }
      if (nx == 0.0 || ny == 0.0) {
        throw std::domain_error("cosine distance undefined for a zero vector");
      }
      // sqrt(nx * ny) keeps cos(x, x) exactly 1 under rounding
      double c = dot / std::sqrt(nx * ny);
      c = std::clamp(c, -1.0, 1.0);
      return std::sqrt(2.0 * (1.0 - c));
    }
    case DistanceKind::manhattan: {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - y[i]);
      return sum;
    }
    case DistanceKind::sbd:
      throw std::invalid_argument("classic_distance: sbd is not a classic kind");
  }
  throw std::invalid_argument("classic_distance: unknown kind");
}

inline double distance(DistanceKind kind, std::span<const double> x, std::span<const double> y) {
  return kind == DistanceKind::sbd ? sbd(x, y) : classic_distance(kind, x, y);
}

/// D[i][j] = delta(S[i], S[j]) for the chosen delta. Upper triangle computed,
/// mirrored; diagonal exactly 0.
inline DistanceMatrix build_distance(const SimilarityMatrix& s, DistanceKind kind) {
  const std::size_t n = s.n;
  DistanceMatrix d{n, kind, std::vector<double>(n * n, 0.0)};
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = s.row(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = distance(kind, rows[i], rows[j]);
      d.entries[i * n + j] = v;
      d.entries[j * n + i] = v;
    }
  }
  return d;
}

}  // namespace catclust
