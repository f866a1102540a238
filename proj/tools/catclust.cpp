// catclust command-line front end: cluster a categorical dataset, dump its
// similarity/distance matrices, or run the benchmark grid over a manifest.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "catclust/benchmark.hpp"
#include "catclust/clustering.hpp"
#include "catclust/dataset.hpp"
#include "catclust/evaluation.hpp"
#include "catclust/space.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct IngestFlags {
  std::string label_col = "last";
  std::string missing_token = "?";
  std::string delimiter = ",";
  bool has_header = false;
};

void add_ingest_flags(CLI::App* cmd, IngestFlags& flags) {
  cmd->add_option("--label-col", flags.label_col,
                  "class label column: 'last', 'none' or a 0-based index")
      ->default_val("last");
  cmd->add_option("--missing-token", flags.missing_token, "missing-value token, kept as its own category")
      ->default_val("?");
  cmd->add_option("--delimiter", flags.delimiter, "field delimiter (single character)")
      ->default_val(",");
  cmd->add_flag("--header", flags.has_header, "skip a header line");
}

catclust::CategoricalDataset load_or_exit(const std::string& path, const IngestFlags& flags) {
  if (flags.delimiter.size() != 1) {
    std::cerr << "error: --delimiter must be a single character\n";
    std::exit(kExitUsage);
  }
  catclust::IngestOptions opts;
  opts.missing_token = flags.missing_token;
  opts.delimiter = flags.delimiter[0];
  opts.has_header = flags.has_header;
  try {
    opts.label_column = catclust::parse_label_column(flags.label_col);
  } catch (const std::exception& e) {
    std::cerr << "error: --label-col: " << e.what() << "\n";
    std::exit(kExitUsage);
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open input file: " << path << "\n";
    std::exit(kExitUsage);
  }
  try {
    return catclust::load_dataset(in, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    std::exit(kExitUsage);
  }
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    std::exit(kExitUsage);
  }
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"categorical clustering via similarity-based space structure"};
  app.require_subcommand(1);

  // --- cluster ---------------------------------------------------------
  auto* cluster = app.add_subcommand("cluster", "cluster one dataset and print the assignment");
  std::string cluster_input, algorithm_name, distance_name = "sbd", linkage_name = "average";
  std::string cluster_output;
  int k = 0, restarts = 1, max_iterations = 300, n_init = 10;
  std::uint64_t seed = 0;
  double tolerance = 1e-6, fuzzifier = 2.0;
  bool score = false;
  IngestFlags cluster_ingest;
  cluster->add_option("input", cluster_input, "dataset file (delimited text)")->required();
  cluster->add_option("--algorithm", algorithm_name, "kmeans, fcm, hierarchical or kmodes")->required();
  auto* distance_opt =
      cluster->add_option("--distance", distance_name, "sbd, euclidean, cosine or manhattan")
          ->default_val("sbd");
  cluster->add_option("--k", k, "number of clusters")->required();
  cluster->add_option("--seed", seed, "random seed")->default_val(0);
  cluster->add_option("--linkage", linkage_name, "single, complete, average or ward")
      ->default_val("average");
  cluster->add_option("--restarts", restarts, "restarts used for the --score average")->default_val(1);
  cluster->add_option("--max-iter", max_iterations, "iteration cap")->default_val(300);
  cluster->add_option("--n-init", n_init, "initializations per fit, best kept by objective")
      ->default_val(10);
  cluster->add_option("--tol", tolerance, "convergence tolerance")->default_val(1e-6);
  cluster->add_option("--fuzzifier", fuzzifier, "FCM fuzzifier (> 1)")->default_val(2.0);
  cluster->add_flag("--score", score, "append mean accuracy over restarts (labeled data only)");
  cluster->add_option("--output", cluster_output, "output file (default stdout)");
  add_ingest_flags(cluster, cluster_ingest);

  // --- matrix ----------------------------------------------------------
  auto* matrix = app.add_subcommand("matrix", "dump the similarity or distance matrix");
  std::string matrix_input, matrix_kind, matrix_distance, matrix_output;
  IngestFlags matrix_ingest;
  matrix->add_option("input", matrix_input, "dataset file (delimited text)")->required();
  matrix->add_option("--kind", matrix_kind, "similarity or distance")->required();
  matrix->add_option("--distance", matrix_distance, "distance kind (required when --kind distance)");
  matrix->add_option("--output", matrix_output, "output file (default stdout)");
  add_ingest_flags(matrix, matrix_ingest);

  // --- benchmark -------------------------------------------------------
  auto* benchmark = app.add_subcommand("benchmark", "run the accuracy grid over a dataset manifest");
  std::string manifest_path, bench_output = "report", bench_linkage = "average";
  int bench_restarts = 100;
  std::uint64_t bench_seed = 0;
  bool no_timing = false;
  benchmark->add_option("manifest", manifest_path, "manifest: name,path,k,label_col[,missing_token]")
      ->required();
  benchmark->add_option("--restarts", bench_restarts, "restarts per cell")->default_val(100);
  benchmark->add_option("--seed", bench_seed, "master seed")->default_val(0);
  benchmark->add_option("--linkage", bench_linkage, "hierarchical linkage")->default_val("average");
  benchmark->add_option("--output", bench_output, "output prefix, writes <prefix>.csv and <prefix>.json")
      ->default_val("report");
  benchmark->add_flag("--no-timing", no_timing, "zero the seconds column for byte-identical reruns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cluster->parsed()) {
    const auto algorithm = catclust::parse_algorithm(algorithm_name);
    if (!algorithm) {
      std::cerr << "error: --algorithm: unknown algorithm '" << algorithm_name << "'\n";
      return kExitUsage;
    }
    if (*algorithm == catclust::Algorithm::kmodes && distance_opt->count() > 0) {
      std::cerr << "error: --distance does not apply to kmodes\n";
      return kExitUsage;
    }
    const auto kind = catclust::parse_distance_kind(distance_name);
    if (!kind) {
      std::cerr << "error: --distance: unknown distance '" << distance_name << "'\n";
      return kExitUsage;
    }
    const auto linkage = catclust::parse_linkage(linkage_name);
    if (!linkage) {
      std::cerr << "error: --linkage: unknown linkage '" << linkage_name << "'\n";
      return kExitUsage;
    }
    if (k < 1) {
      std::cerr << "error: --k must be at least 1\n";
      return kExitUsage;
    }
    if (restarts < 1) {
      std::cerr << "error: --restarts must be at least 1\n";
      return kExitUsage;
    }
    if (n_init < 1) {
      std::cerr << "error: --n-init must be at least 1\n";
      return kExitUsage;
    }

    const auto ds = load_or_exit(cluster_input, cluster_ingest);
    if (static_cast<std::size_t>(k) > ds.n_objects) {
      std::cerr << "error: --k exceeds the number of objects (" << ds.n_objects << ")\n";
      return kExitUsage;
    }
    if (score && !ds.labels) {
      std::cerr << "error: --score needs a labeled dataset (see --label-col)\n";
      return kExitUsage;
    }

    catclust::ClusterConfig cfg;
    cfg.k = k;
    cfg.max_iterations = max_iterations;
    cfg.n_init = n_init;
    cfg.tolerance = tolerance;
    cfg.fuzzifier = fuzzifier;
    cfg.linkage = *linkage;

    try {
      catclust::Points embedding;
      if (*algorithm != catclust::Algorithm::kmodes) {
        embedding = catclust::build_distance(catclust::build_similarity(ds), *kind).rows();
      }
      auto fit_once = [&](std::uint64_t fit_seed) {
        cfg.seed = fit_seed;
        switch (*algorithm) {
          case catclust::Algorithm::kmeans: return catclust::kmeans_fit(embedding, cfg).assignment;
          case catclust::Algorithm::fcm: return catclust::fcm_fit(embedding, cfg).assignment;
          case catclust::Algorithm::hierarchical:
            return catclust::hierarchical_fit(embedding, cfg).assignment;
          case catclust::Algorithm::kmodes: return catclust::kmodes_fit(ds, cfg).assignment;
        }
        throw std::logic_error("unreachable");
      };

      const auto assignment = fit_once(catclust::restart_seed(seed, 0));
      std::ofstream file;
      auto& out = open_output(cluster_output, file);
      for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
        out << i << '\t' << assignment.labels[i] << '\n';
      }
      if (score) {
        double sum = catclust::accuracy(assignment, *ds.labels);
        for (int r = 1; r < restarts; ++r) {
          sum += catclust::accuracy(fit_once(catclust::restart_seed(seed, r)), *ds.labels);
        }
        out << "accuracy\t" << catclust::format_double(sum / restarts) << '\n';
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitRuntime;
    }
    return 0;
  }

  if (matrix->parsed()) {
    if (matrix_kind != "similarity" && matrix_kind != "distance") {
      std::cerr << "error: --kind must be 'similarity' or 'distance'\n";
      return kExitUsage;
    }
    std::optional<catclust::DistanceKind> kind;
    if (matrix_kind == "distance") {
      if (matrix_distance.empty()) {
        std::cerr << "error: --distance is required when --kind distance\n";
        return kExitUsage;
      }
      kind = catclust::parse_distance_kind(matrix_distance);
      if (!kind) {
        std::cerr << "error: --distance: unknown distance '" << matrix_distance << "'\n";
        return kExitUsage;
      }
    }

    const auto ds = load_or_exit(matrix_input, matrix_ingest);
    try {
      const auto sim = catclust::build_similarity(ds);
      std::ofstream file;
      auto& out = open_output(matrix_output, file);
      if (!kind) {
        for (std::size_t i = 0; i < sim.n; ++i) {
          for (std::size_t j = 0; j < sim.n; ++j) out << (j ? "," : "") << sim.at(i, j);
          out << '\n';
        }
      } else {
        const auto dist = catclust::build_distance(sim, *kind);
        for (std::size_t i = 0; i < dist.n; ++i) {
          for (std::size_t j = 0; j < dist.n; ++j)
            out << (j ? "," : "") << catclust::format_double(dist.at(i, j));
          out << '\n';
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitRuntime;
    }
    return 0;
  }

  // benchmark
  const auto linkage = catclust::parse_linkage(bench_linkage);
  if (!linkage) {
    std::cerr << "error: --linkage: unknown linkage '" << bench_linkage << "'\n";
    return kExitUsage;
  }
  if (bench_restarts < 1) {
    std::cerr << "error: --restarts must be at least 1\n";
    return kExitUsage;
  }

  std::vector<catclust::ManifestEntry> entries;
  try {
    entries = catclust::load_manifest(manifest_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  // All inputs must exist before any computation starts.
  for (const auto& entry : entries) {
    std::ifstream probe(entry.path);
    if (!probe) {
      std::cerr << "error: manifest dataset '" << entry.name << "': cannot open " << entry.path
                << "\n";
      return kExitUsage;
    }
    if (entry.label_column == catclust::IngestOptions::kNoLabel) {
      std::cerr << "error: manifest dataset '" << entry.name << "': benchmark needs class labels\n";
      return kExitUsage;
    }
  }

  std::vector<catclust::ReportCell> cells;
  bool any_failed = false;
  for (const auto& entry : entries) {
    try {
      const auto ds = catclust::load_manifest_dataset(entry);
      auto grid = catclust::run_grid(ds, entry.name, entry.k, bench_restarts, bench_seed, *linkage);
      for (auto& cell : grid) {
        any_failed = any_failed || !cell.error.empty();
        cells.push_back(std::move(cell));
      }
    } catch (const std::exception& e) {
      catclust::ReportCell failed;
      failed.dataset = entry.name;
      failed.restarts = bench_restarts;
      failed.master_seed = bench_seed;
      failed.error = e.what();
      cells.push_back(std::move(failed));
      any_failed = true;
    }
  }

  std::ofstream csv(bench_output + ".csv");
  std::ofstream json(bench_output + ".json");
  if (!csv || !json) {
    std::cerr << "error: cannot write report files with prefix '" << bench_output << "'\n";
    return kExitUsage;
  }
  csv << catclust::report_to_csv(cells, !no_timing);
  json << catclust::report_to_json(cells, !no_timing).dump(2) << '\n';
  std::cout << "wrote " << bench_output << ".csv and " << bench_output << ".json ("
            << cells.size() << " cells)\n";
  return any_failed ? kExitRuntime : 0;
}
