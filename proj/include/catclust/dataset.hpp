#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace catclust {

/// Options controlling delimited-text ingestion.
struct IngestOptions {
  static constexpr int kLastColumn = -1;
  static constexpr int kNoLabel = -2;

  int label_column = kLastColumn;  // kNoLabel, kLastColumn, or a 0-based index
  bool has_header = false;
  std::string missing_token = "?";  // kept as an ordinary category, never dropped
  char delimiter = ',';
};

/// N objects x M categorical attributes, stored as dense integer codes.
/// Codes are assigned per attribute in first-appearance order, so ingestion
/// of the same stream is always bit-identical.
struct CategoricalDataset {
  std::size_t n_objects = 0;
  std::size_t n_attributes = 0;
  std::vector<int> cells;  // row-major, n_objects * n_attributes
  std::vector<std::vector<std::string>> category_tables;  // per-attribute domains
  std::optional<std::vector<int>> labels;  // class codes, evaluation-only
  std::vector<std::string> class_names;

  int code(std::size_t i, std::size_t m) const { return cells[i * n_attributes + m]; }

  const std::string& decode(std::size_t i, std::size_t m) const {
    return category_tables[m][static_cast<std::size_t>(code(i, m))];
  }

  std::size_t n_classes() const { return class_names.size(); }
};

/// Ordered domain V(attribute): every distinct category string seen in that
/// column, in first-appearance order.
inline const std::vector<std::string>& category_domain(const CategoricalDataset& ds,
                                                       std::size_t attribute) {
  if (attribute >= ds.n_attributes) {
    throw std::out_of_range("category_domain: attribute " + std::to_string(attribute) +
                            " out of range (M = " + std::to_string(ds.n_attributes) + ")");
  }
  return ds.category_tables[attribute];
}

namespace detail {

inline std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delimiter)) fields.push_back(trim(field));
  if (!line.empty() && line.back() == delimiter) fields.push_back("");
  return fields;
}

}  // namespace detail

/// Reads a delimited text table, one object per line. Every distinct string
/// per column (the missing token included) becomes its own category code.
/// The label column, when configured, is stripped from the attributes and
/// encoded separately.
inline CategoricalDataset load_dataset(std::istream& in, const IngestOptions& opts = {}) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_skipped = !opts.has_header;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    auto fields = detail::split_line(line, opts.delimiter);
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw std::runtime_error("load_dataset: ragged row at line " + std::to_string(line_no) +
                               " (" + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(width) + ")");
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::runtime_error("load_dataset: empty input stream");

  int label_col = opts.label_column;
  if (label_col == IngestOptions::kLastColumn) label_col = static_cast<int>(width) - 1;
  if (label_col != IngestOptions::kNoLabel &&
      (label_col < 0 || label_col >= static_cast<int>(width))) {
    throw std::invalid_argument("load_dataset: label column " +
                                std::to_string(opts.label_column) + " out of range for " +
                                std::to_string(width) + " columns");
  }
  const bool labeled = label_col != IngestOptions::kNoLabel;
  if (labeled && width < 2) {
    throw std::invalid_argument("load_dataset: no attribute columns remain after the label");
  }

  CategoricalDataset ds;
  ds.n_objects = rows.size();
  ds.n_attributes = labeled ? width - 1 : width;
  ds.cells.reserve(ds.n_objects * ds.n_attributes);
  ds.category_tables.resize(ds.n_attributes);

  std::vector<std::unordered_map<std::string, int>> codebooks(ds.n_attributes);
  std::unordered_map<std::string, int> class_codebook;
  std::vector<int> labels;

  for (const auto& row : rows) {
    std::size_t attr = 0;
    for (std::size_t col = 0; col < width; ++col) {
      if (labeled && static_cast<int>(col) == label_col) {
        auto [it, inserted] = class_codebook.try_emplace(row[col],
                                                         static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(row[col]);
        labels.push_back(it->second);
        continue;
      }
      auto& book = codebooks[attr];
      auto [it, inserted] =
          book.try_emplace(row[col], static_cast<int>(ds.category_tables[attr].size()));
      if (inserted) ds.category_tables[attr].push_back(row[col]);
      ds.cells.push_back(it->second);
      ++attr;
    }
  }
  if (labeled) ds.labels = std::move(labels);
  return ds;
}

}  // namespace catclust
