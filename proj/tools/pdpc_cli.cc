// Copyright 2026 The PDPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pdpc_cli: train, evaluate and visualize PDPC predictors.
//
//   pdpc_cli stats  --size 8 -o corpus.stats images/
//   pdpc_cli oracle --stats corpus.stats -o oracle.mat
//   pdpc_cli fit    --stats corpus.stats -o params2.json
//   pdpc_cli fit    --sets 4 --base params2.json -o params4.json images/
//   pdpc_cli eval   --params params4.json --json report.json held_out/
//   pdpc_cli viz    --matrices oracle.mat --size 8 -o oracle8.pgm

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdpc/pdpc.h"

namespace {

namespace fs = std::filesystem;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Ok(pdpc_status status, const std::string& context) {
  if (status != PDPC_OK) {
    throw CliError(context + ": " + pdpc_status_name(status) + ": " + pdpc_last_error());
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ImagePtr = std::unique_ptr<pdpc_image, Deleter<pdpc_image, pdpc_image_free>>;
using StatsPtr = std::unique_ptr<pdpc_stats, Deleter<pdpc_stats, pdpc_stats_free>>;
using MatricesPtr =
    std::unique_ptr<pdpc_matrices, Deleter<pdpc_matrices, pdpc_matrices_free>>;
using LibraryPtr = std::unique_ptr<pdpc_library, Deleter<pdpc_library, pdpc_library_free>>;
using ReportPtr = std::unique_ptr<pdpc_report, Deleter<pdpc_report, pdpc_report_free>>;

struct Common {
  std::vector<int> sizes;
  int stride = 0;
  int bit_depth = 8;
  bool smoothing = true;
  bool edge_filters = true;
  bool skip_padded = false;
  int threads = 1;
  uint64_t seed = 0;
  // Raw YUV input.
  int width = 0;
  int height = 0;
  int frame = 0;
  std::vector<std::string> inputs;
};

void AddCommon(CLI::App* app, Common& c, bool with_inputs) {
  app->add_option("--size", c.sizes, "Block size 4, 8, 16 or 32 (repeatable)")
      ->check(CLI::IsMember({4, 8, 16, 32}));
  app->add_option("--stride", c.stride, "Block grid stride in pixels (default: N)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--bit-depth", c.bit_depth, "Sample bit depth of the inputs")
      ->check(CLI::IsMember({8, 10}));
  const std::map<std::string, bool> on_off{{"on", true}, {"off", false}};
  app->add_option("--smoothing", c.smoothing, "HEVC [1 2 1] reference smoothing (on|off)")
      ->transform(CLI::CheckedTransformer(on_off));
  app->add_option("--edge-filters", c.edge_filters,
                  "DC / horizontal / vertical boundary filters (on|off)")
      ->transform(CLI::CheckedTransformer(on_off));
  app->add_flag("--skip-padded-blocks", c.skip_padded,
                "Ignore blocks whose references needed substitution");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed,
                  "Seed recorded for reproducibility (all stages are deterministic)");
  if (with_inputs) {
    app->add_option("--width", c.width, "Frame width of raw .yuv inputs");
    app->add_option("--height", c.height, "Frame height of raw .yuv inputs");
    app->add_option("--frame", c.frame, "Frame index of raw .yuv inputs");
    app->add_option("inputs", c.inputs, "Images (.pgm, .yuv) or directories of them");
  }
}

pdpc_policy Policy(const Common& c) {
  return {c.smoothing ? 1 : 0, c.edge_filters ? 1 : 0};
}

// Owns the images and the option struct that points into `sizes`.
struct Corpus {
  std::vector<ImagePtr> owned;
  std::vector<const pdpc_image*> images;
  std::vector<int> sizes;
  pdpc_corpus_options options{};
};

bool IsImageFile(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".pgm" || ext == ".yuv";
}

std::vector<fs::path> ExpandInputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && IsImageFile(e.path())) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(in);
    }
  }
  return files;
}

void LoadCorpus(const Common& c, Corpus& corpus) {
  const std::vector<fs::path> files = ExpandInputs(c.inputs);
  if (files.empty()) throw CliError("no input images");
  for (const fs::path& f : files) {
    pdpc_image* img = nullptr;
    if (f.extension() == ".yuv") {
      if (c.width <= 0 || c.height <= 0) {
        throw CliError(f.string() + ": raw YUV input needs --width and --height");
      }
      Ok(pdpc_image_load_yuv(f.c_str(), c.width, c.height, c.bit_depth, c.frame, &img),
         f.string());
    } else {
      Ok(pdpc_image_load_pgm(f.c_str(), &img), f.string());
    }
    corpus.owned.emplace_back(img);
    if (pdpc_image_bit_depth(img) != c.bit_depth) {
      throw CliError(f.string() + ": bit depth " + std::to_string(pdpc_image_bit_depth(img)) +
                     " does not match --bit-depth " + std::to_string(c.bit_depth));
    }
    corpus.images.push_back(img);
  }
  corpus.sizes = c.sizes.empty() ? std::vector<int>{8} : c.sizes;
  pdpc_corpus_options_init(&corpus.options);
  corpus.options.sizes = corpus.sizes.data();
  corpus.options.num_sizes = corpus.sizes.size();
  corpus.options.stride = c.stride;
  corpus.options.skip_padded = c.skip_padded ? 1 : 0;
  corpus.options.policy = Policy(c);
  corpus.options.threads = c.threads;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError("cannot write " + path);
}

// Subcommands ---------------------------------------------------------------

struct StatsArgs {
  Common common;
  bool centered = false;
  std::string output;
};

void RunStats(const StatsArgs& a) {
  Corpus corpus;
  LoadCorpus(a.common, corpus);
  corpus.options.centered = a.centered ? 1 : 0;
  pdpc_stats* raw = nullptr;
  Ok(pdpc_stats_accumulate(corpus.images.data(), corpus.images.size(), &corpus.options, &raw),
     "stats");
  StatsPtr stats(raw);
  Ok(pdpc_stats_save(stats.get(), a.output.c_str()), a.output);
  std::printf("%zu (N, mode) records from %zu images written to %s\n",
              pdpc_stats_num_records(stats.get()), corpus.images.size(), a.output.c_str());
}

struct OracleArgs {
  Common common;
  std::string stats;
  double ridge = 1e-6;
  std::string output;
};

void RunOracle(const OracleArgs& a) {
  pdpc_stats* raw = nullptr;
  Ok(pdpc_stats_load(a.stats.c_str(), &raw), a.stats);
  StatsPtr stats(raw);
  pdpc_matrices* m = nullptr;
  Ok(pdpc_oracle_solve(stats.get(), a.ridge, &m), "oracle");
  MatricesPtr matrices(m);
  Ok(pdpc_matrices_save(matrices.get(), a.output.c_str()), a.output);
  std::fputs(pdpc_matrices_report(matrices.get()), stdout);
  std::printf("%zu matrices written to %s\n", pdpc_matrices_count(matrices.get()),
              a.output.c_str());
}

struct FitArgs {
  Common common;
  std::string stats;
  std::string base;
  int sets = 2;
  double ridge = 1e-6;
  int grid_step = 32;
  int max_iterations = 10;
  std::string output;
};

void RunFit(const FitArgs& a) {
  pdpc_fit_options fit;
  pdpc_fit_options_init(&fit);
  fit.num_sets = a.sets;
  fit.ridge = a.ridge;
  fit.grid_denominator = a.grid_step;
  fit.max_iterations = a.max_iterations;
  fit.threads = a.common.threads;
  fit.policy = Policy(a.common);

  pdpc_library* raw = nullptr;
  if (!a.stats.empty()) {
    if (!a.common.inputs.empty() || !a.base.empty()) {
      throw CliError("fit takes either --stats or a corpus, not both");
    }
    pdpc_stats* s = nullptr;
    Ok(pdpc_stats_load(a.stats.c_str(), &s), a.stats);
    StatsPtr stats(s);
    Ok(pdpc_library_fit_stats(stats.get(), &fit, &raw), "fit");
  } else {
    Corpus corpus;
    LoadCorpus(a.common, corpus);
    LibraryPtr base;
    if (!a.base.empty()) {
      pdpc_library* b = nullptr;
      Ok(pdpc_library_load(a.base.c_str(), &b), a.base);
      base.reset(b);
    }
    Ok(pdpc_library_fit_corpus(corpus.images.data(), corpus.images.size(), &corpus.options,
                               &fit, base.get(), &raw),
       "fit");
  }
  LibraryPtr library(raw);
  Ok(pdpc_library_save(library.get(), a.output.c_str()), a.output);
  std::fputs(pdpc_library_report(library.get()), stdout);
  std::printf("%d-set library written to %s\n", pdpc_library_num_sets(library.get()),
              a.output.c_str());
}

struct EvalArgs {
  Common common;
  std::string params;
  std::string oracle;
  std::string json;
  std::string text;
};

void RunEval(const EvalArgs& a) {
  Corpus corpus;
  LoadCorpus(a.common, corpus);
  pdpc_library* l = nullptr;
  if (a.params.empty()) {
    Ok(pdpc_library_identity(&l), "identity library");
  } else {
    Ok(pdpc_library_load(a.params.c_str(), &l), a.params);
  }
  LibraryPtr library(l);
  MatricesPtr oracle;
  if (!a.oracle.empty()) {
    pdpc_matrices* m = nullptr;
    Ok(pdpc_matrices_load(a.oracle.c_str(), &m), a.oracle);
    oracle.reset(m);
  }
  pdpc_report* r = nullptr;
  Ok(pdpc_evaluate(corpus.images.data(), corpus.images.size(), library.get(), oracle.get(),
                   &corpus.options, &r),
     "eval");
  ReportPtr report(r);
  if (a.text.empty()) {
    std::fputs(pdpc_report_text(report.get()), stdout);
  } else {
    WriteText(a.text, pdpc_report_text(report.get()));
  }
  if (!a.json.empty()) WriteText(a.json, pdpc_report_json(report.get()));
}

struct VizArgs {
  Common common;
  std::string matrices;
  std::string params;
  int set = 1;
  pdpc_normalization normalization = PDPC_NORMALIZE_PER_MATRIX;
  int gutter = 1;
  std::string output;
};

void RunViz(const VizArgs& a) {
  if (a.matrices.empty() == a.params.empty()) {
    throw CliError("viz needs exactly one of --matrices and --params");
  }
  const int n = a.common.sizes.empty() ? 8 : a.common.sizes.front();
  if (a.common.sizes.size() > 1) throw CliError("viz renders one block size at a time");
  MatricesPtr matrices;
  pdpc_matrices* m = nullptr;
  if (!a.matrices.empty()) {
    Ok(pdpc_matrices_load(a.matrices.c_str(), &m), a.matrices);
  } else {
    pdpc_library* l = nullptr;
    Ok(pdpc_library_load(a.params.c_str(), &l), a.params);
    LibraryPtr library(l);
    Ok(pdpc_library_realize(library.get(), n, a.set, Policy(a.common), &m), "realize");
  }
  matrices.reset(m);
  Ok(pdpc_render_matrices(matrices.get(), n, a.normalization, a.gutter, a.output.c_str()),
     a.output);
  std::printf("rendered N=%d matrices to %s\n", n, a.output.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDPC intra prediction: training, evaluation and visualization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pdpc_version());

  StatsArgs stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Accumulate per-mode statistics");
  AddCommon(stats_cmd, stats.common, true);
  stats_cmd->add_flag("--centered", stats.centered,
                      "Remove the reference mean before accumulating (analysis only)");
  stats_cmd->add_option("-o,--output", stats.output, "Stats file")->required();

  OracleArgs oracle;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Solve the optimal linear predictor per mode");
  AddCommon(oracle_cmd, oracle.common, false);
  oracle_cmd->add_option("--stats", oracle.stats, "Stats file")->required();
  oracle_cmd->add_option("--ridge", oracle.ridge, "Relative ridge regularization")
      ->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("-o,--output", oracle.output, "Matrices file")->required();

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit PDPC parameter sets");
  AddCommon(fit_cmd, fit.common, true);
  fit_cmd->add_option("--stats", fit.stats, "Fit one set per group from a stats file");
  fit_cmd->add_option("--base", fit.base, "Keep the sets of this library and add new ones");
  fit_cmd->add_option("--sets", fit.sets, "Parameter sets including the identity")
      ->check(CLI::IsMember({2, 4}));
  fit_cmd->add_option("--ridge", fit.ridge, "Ridge of the oracle bound in the fit report")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--grid-step", fit.grid_step, "Final c grid step is 1/grid-step")
      ->check(CLI::IsMember({8, 16, 32}));
  fit_cmd->add_option("--max-iterations", fit.max_iterations, "Multi-set refinement rounds")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("-o,--output", fit.output, "Params JSON file")->required();

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a parameter library");
  AddCommon(eval_cmd, eval.common, true);
  eval_cmd->add_option("--params", eval.params, "Params JSON (default: identity only)");
  eval_cmd->add_option("--oracle", eval.oracle, "Also evaluate these oracle matrices");
  eval_cmd->add_option("--json", eval.json, "Write the JSON report here");
  eval_cmd->add_option("--text", eval.text, "Write the text report here instead of stdout");

  VizArgs viz;
  CLI::App* viz_cmd = app.add_subcommand("viz", "Render predictor matrices as a PGM");
  AddCommon(viz_cmd, viz.common, false);
  viz_cmd->add_option("--matrices", viz.matrices, "Matrices file");
  viz_cmd->add_option("--params", viz.params, "Params JSON to realize as matrices");
  viz_cmd->add_option("--set", viz.set, "Parameter set rendered from --params");
  const std::map<std::string, pdpc_normalization> norms{
      {"global", PDPC_NORMALIZE_GLOBAL}, {"per-matrix", PDPC_NORMALIZE_PER_MATRIX}};
  viz_cmd->add_option("--normalization", viz.normalization, "global or per-matrix (default per-matrix)")
      ->transform(CLI::CheckedTransformer(norms));
  viz_cmd->add_option("--gutter", viz.gutter, "Gutter width between tiles")
      ->check(CLI::NonNegativeNumber);
  viz_cmd->add_option("-o,--output", viz.output, "Output PGM")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (stats_cmd->parsed()) RunStats(stats);
    if (oracle_cmd->parsed()) RunOracle(oracle);
    if (fit_cmd->parsed()) RunFit(fit);
    if (eval_cmd->parsed()) RunEval(eval);
    if (viz_cmd->parsed()) RunViz(viz);
  } catch (const CliError& e) {
    std::fprintf(stderr, "pdpc_cli: %s\n", e.what());
    return 1;
  }
  return 0;
}
