#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catclust/dataset.hpp"
#include "catclust/evaluation.hpp"

#include "json.hpp"

namespace catclust {

/// One dataset entry of a benchmark manifest: name, CSV path, cluster count
/// and label column ("last", "none" or a 0-based index).
struct ManifestEntry {
  std::string name;
  std::string path;
  int k = 0;
  int label_column = IngestOptions::kLastColumn;
  std::string missing_token = "?";
};

inline int parse_label_column(const std::string& text) {
  if (text == "last" || text.empty()) return IngestOptions::kLastColumn;
  if (text == "none") return IngestOptions::kNoLabel;
  std::size_t pos = 0;
  int value = std::stoi(text, &pos);
  if (pos != text.size() || value < 0) {
    throw std::invalid_argument("label column must be 'last', 'none' or a non-negative index, got '" +
                                text + "'");
  }
  return value;
}

/// Manifest format: comma-separated `name,path,k,label_col[,missing_token]`,
/// one dataset per line, `#` comments allowed. Relative paths resolve against
/// the manifest's directory.
inline std::vector<ManifestEntry> load_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);

  std::string base;
  if (auto slash = manifest_path.find_last_of('/'); slash != std::string::npos) {
    base = manifest_path.substr(0, slash + 1);
  }

  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto fields = detail::split_line(trimmed, ',');
    if (fields.size() < 4 || fields.size() > 5) {
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": expected name,path,k,label_col[,missing_token]");
    }
    ManifestEntry e;
    e.name = fields[0];
    e.path = (!fields[1].empty() && fields[1][0] != '/') ? base + fields[1] : fields[1];
    e.k = std::stoi(fields[2]);
    e.label_column = parse_label_column(fields[3]);
    if (fields.size() == 5) e.missing_token = fields[4];
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw std::runtime_error("manifest has no dataset entries: " + manifest_path);
  return entries;
}

inline CategoricalDataset load_manifest_dataset(const ManifestEntry& entry) {
  std::ifstream in(entry.path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + entry.path);
  IngestOptions opts;
  opts.label_column = entry.label_column;
  opts.missing_token = entry.missing_token;
  return load_dataset(in, opts);
}

constexpr std::array<DistanceKind, 4> kAllDistances = {
    DistanceKind::sbd, DistanceKind::euclidean, DistanceKind::cosine, DistanceKind::manhattan};

/// Runs the full grid {kmodes} + {kmeans, fcm, hierarchical} x the four
/// distance kinds for one dataset (13 cells), marking the best-accuracy
/// cell(s). A failing cell carries its error message instead of numbers.
inline std::vector<ReportCell> run_grid(const CategoricalDataset& ds, const std::string& name,
                                        int k, int restarts, std::uint64_t master_seed,
                                        Linkage linkage = Linkage::average) {
  std::vector<ReportCell> cells;
  auto run_cell = [&](Algorithm algo, DistanceKind kind) {
    ExperimentSpec spec;
    spec.algorithm = algo;
    spec.distance = kind;
    spec.restarts = restarts;
    spec.master_seed = master_seed;
    spec.config.k = k;
    spec.config.linkage = linkage;
    try {
      cells.push_back(run_experiment(ds, spec, name));
    } catch (const std::exception& e) {
      ReportCell failed;
      failed.dataset = name;
      failed.algorithm = algo;
      if (algo != Algorithm::kmodes) failed.distance = kind;
      failed.restarts = restarts;
      failed.master_seed = master_seed;
      failed.error = e.what();
      cells.push_back(std::move(failed));
    }
  };

  run_cell(Algorithm::kmodes, DistanceKind::sbd);
  for (auto algo : {Algorithm::kmeans, Algorithm::fcm, Algorithm::hierarchical}) {
    for (auto kind : kAllDistances) run_cell(algo, kind);
  }

  double best = -1.0;
  for (const auto& c : cells) {
    if (c.error.empty()) best = std::max(best, c.mean_accuracy);
  }
  for (auto& c : cells) c.best = c.error.empty() && c.mean_accuracy == best;
  return cells;
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);  // round-trips doubles exactly
  ss << v;
  return ss.str();
}

/// Delimited report, one line per cell. `include_timing` off prints 0 in the
/// seconds column so repeated runs are byte-identical.
inline std::string report_to_csv(const std::vector<ReportCell>& cells, bool include_timing = true) {
  std::ostringstream out;
  out << "dataset,algorithm,distance,mean_accuracy,std_accuracy,restarts,seed,seconds,best,error\n";
  for (const auto& c : cells) {
    out << c.dataset << ',' << to_string(c.algorithm) << ','
        << (c.distance ? to_string(*c.distance) : "-") << ',' << format_double(c.mean_accuracy)
        << ',' << format_double(c.std_accuracy) << ',' << c.restarts << ',' << c.master_seed << ','
        << (include_timing ? format_double(c.seconds) : "0") << ',' << (c.best ? 1 : 0) << ','
        << c.error << '\n';
  }
  return out.str();
}

inline nlohmann::json report_to_json(const std::vector<ReportCell>& cells,
                                     bool include_timing = true) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json rec{{"dataset", c.dataset},
                       {"algorithm", to_string(c.algorithm)},
                       {"distance", c.distance ? to_string(*c.distance) : "-"},
                       {"mean_accuracy", c.mean_accuracy},
                       {"std_accuracy", c.std_accuracy},
                       {"restarts", c.restarts},
                       {"seed", c.master_seed},
                       {"seconds", include_timing ? c.seconds : 0.0},
                       {"best", c.best}};
    if (!c.error.empty()) rec["error"] = c.error;
    arr.push_back(std::move(rec));
  }
  return arr;
}

}  // namespace catclust
