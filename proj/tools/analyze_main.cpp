#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "isbst/analysis/hierarchical.hpp"
#include "isbst/analysis/pca.hpp"
#include "isbst/analysis/report.hpp"

namespace fs = std::filesystem;
using namespace isbst;
using namespace isbst::analysis;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

// Labels default to the file stem, widened to "<dir>/<stem>" when two inputs
// share a stem (e.g. two final_population.json files from different runs).
std::vector<BehaviorSample> load_all(const std::vector<std::string>& paths, const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != paths.size()) {
    throw std::runtime_error("--labels needs one label per --in file");
  }
  std::vector<BehaviorSample> samples;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::string label;
    if (!labels.empty()) {
      label = labels[i];
    } else {
      const fs::path path(paths[i]);
      label = path.stem().string();
      const auto shared = std::count_if(paths.begin(), paths.end(),
                                        [&](const std::string& q) { return fs::path(q).stem() == path.stem(); });
      if (shared > 1) {
        const fs::path parent = fs::absolute(path).parent_path().filename();
        label = (parent / path.stem()).generic_string();
      }
    }
    samples.push_back(load_sample(paths[i], label));
  }
  return samples;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavior-space analysis of test case populations"};
  app.require_subcommand(1);

  auto* compare = app.add_subcommand("compare", "Mann-Whitney U and Vargha-Delaney A per objective");
  std::string file_a, file_b, label_a, label_b, compare_out = "report.csv", scope = "population";
  compare->add_option("--a", file_a, "First sample (JSON)")->required();
  compare->add_option("--b", file_b, "Second sample (JSON)")->required();
  compare->add_option("--label-a", label_a, "Label for the first sample (default: file stem)");
  compare->add_option("--label-b", label_b, "Label for the second sample (default: file stem)");
  compare->add_option("--scope", scope, "What the samples contain, e.g. population or exported")->capture_default_str();
  compare->add_option("--out", compare_out, "report.csv or report.json")->capture_default_str();

  auto* cluster = app.add_subcommand("cluster", "Ward clustering of pooled behaviors, composition table");
  std::vector<std::string> cluster_in, cluster_labels;
  std::size_t n_clusters = 6;
  std::string cluster_out = "table.csv";
  cluster->add_option("--in", cluster_in, "Sample files; each file's stem labels its rows unless --labels is given")->required();
  cluster->add_option("--labels", cluster_labels, "One label per input file");
  cluster->add_option("--k", n_clusters, "Number of clusters")->capture_default_str();
  cluster->add_option("--out", cluster_out, "Output CSV")->capture_default_str();

  auto* pca_cmd = app.add_subcommand("pca", "Principal components of pooled behaviors");
  std::vector<std::string> pca_in, pca_labels;
  std::string pca_out = "projection.csv";
  pca_cmd->add_option("--in", pca_in, "Sample files; each file's stem labels its rows unless --labels is given")->required();
  pca_cmd->add_option("--labels", pca_labels, "One label per input file");
  pca_cmd->add_option("--out", pca_out, "Output CSV")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) {
      const auto a = load_sample(file_a, label_a);
      const auto b = load_sample(file_b, label_b);
      const auto report = compare_populations(a, b, scope);
      const fs::path out(compare_out);
      write_text(out, out.extension() == ".json" ? to_json(report).dump(2) + "\n" : to_csv(report));
      for (const auto& r : report.rows) {
        std::cout << objective_name(r.objective) << ": p=" << r.test.p_value << " A=" << r.effect.a << " ("
                  << to_string(r.effect.magnitude) << ")\n";
      }
    } else if (cluster->parsed()) {
      const auto samples = load_all(cluster_in, cluster_labels);
      const auto composition = hierarchical_cluster(samples, n_clusters);
      write_text(cluster_out, composition_csv(composition));
      std::cout << composition_csv(composition);
    } else if (pca_cmd->parsed()) {
      const auto samples = load_all(pca_in, pca_labels);
      const auto result = pca(samples);
      write_text(pca_out, projection_csv(result));
      std::cout << "explained variance (PC1+PC2): "
                << result.explained_variance_ratio[0] + result.explained_variance_ratio[1] << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
