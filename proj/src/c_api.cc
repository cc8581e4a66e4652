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

#include "pdpc/pdpc.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "src/block.h"
#include "src/evaluate.h"
#include "src/intra.h"
#include "src/io.h"
#include "src/matrix.h"
#include "src/param_library.h"
#include "src/pdpc_predictor.h"
#include "src/status.h"
#include "src/training.h"
#include "src/viz.h"

struct pdpc_image {
  pdpc::GrayImage image;
};

struct pdpc_stats {
  pdpc::StatsTable table;
};

struct pdpc_matrices {
  std::vector<pdpc::PredictorMatrix> matrices;
  std::string report;
};

struct pdpc_library {
  pdpc::ParamLibrary library;
  std::string report;
};

struct pdpc_report {
  pdpc::EvalReport report;
  std::string text;
  std::string json;
};

namespace {

using pdpc::ErrorCode;

thread_local std::string last_error;

pdpc_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return PDPC_ERROR_INVALID_ARGUMENT;
    case ErrorCode::kOutOfBounds: return PDPC_ERROR_OUT_OF_BOUNDS;
    case ErrorCode::kIo: return PDPC_ERROR_IO;
    case ErrorCode::kFormat: return PDPC_ERROR_FORMAT;
    case ErrorCode::kConditioning: return PDPC_ERROR_CONDITIONING;
  }
  return PDPC_ERROR_INTERNAL;
}

template <typename Fn>
pdpc_status Guard(Fn&& fn) {
  try {
    fn();
    return PDPC_OK;
  } catch (const pdpc::Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PDPC_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PDPC_ERROR_INTERNAL;
  }
}

void Require(const void* p, const char* what) {
  pdpc::Check(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

pdpc::SmoothingPolicy ToPolicy(pdpc_policy p) {
  return {.enabled = p.smoothing != 0, .edge_filters = p.edge_filters != 0};
}

pdpc::BlockSize ToSize(int n) {
  pdpc::Check(pdpc::BlockSize::IsValid(n), ErrorCode::kInvalidArgument,
              "block size must be 4, 8, 16 or 32, got " + std::to_string(n));
  return pdpc::BlockSize::Of(n);
}

pdpc::PredictionMode ToMode(int mode) {
  pdpc::Check(mode >= 0 && mode < pdpc::kNumModes, ErrorCode::kInvalidArgument,
              "mode must be in [0, 34], got " + std::to_string(mode));
  return pdpc::PredictionMode::Of(mode);
}

pdpc::PdpcParams ToParams(const pdpc_params& p) {
  pdpc::PdpcParams out{p.c1v, p.c2v, p.c1h, p.c2h, p.dv, p.dh, p.a, p.k};
  out.Validate();
  return out;
}

pdpc_params FromParams(const pdpc::PdpcParams& p) {
  return {p.c1v, p.c2v, p.c1h, p.c2h, p.dv, p.dh, p.a, p.k};
}

std::vector<pdpc::GrayImage> ToImages(const pdpc_image* const* images, size_t count) {
  pdpc::Check(count > 0, ErrorCode::kInvalidArgument, "no images given");
  Require(images, "images");
  std::vector<pdpc::GrayImage> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    Require(images[i], "image");
    out.push_back(images[i]->image);
  }
  return out;
}

std::vector<pdpc::BlockSize> ToSizes(const pdpc_corpus_options& o) {
  pdpc::Check(o.num_sizes > 0, ErrorCode::kInvalidArgument, "no block sizes given");
  Require(o.sizes, "sizes");
  std::vector<pdpc::BlockSize> sizes;
  for (size_t i = 0; i < o.num_sizes; ++i) {
    const pdpc::BlockSize s = ToSize(o.sizes[i]);
    pdpc::Check(std::find(sizes.begin(), sizes.end(), s) == sizes.end(),
                ErrorCode::kInvalidArgument, "block size listed twice");
    sizes.push_back(s);
  }
  return sizes;
}

void CheckCorpus(const pdpc_corpus_options& o) {
  pdpc::Check(o.stride >= 0, ErrorCode::kInvalidArgument, "stride must be non-negative");
  pdpc::Check(o.threads >= 1, ErrorCode::kInvalidArgument, "threads must be positive");
}

pdpc::SearchSpec ToSearch(const pdpc_fit_options& o) {
  pdpc::Check(o.grid_denominator == 8 || o.grid_denominator == 16 || o.grid_denominator == 32,
              ErrorCode::kInvalidArgument, "grid denominator must be 8, 16 or 32");
  pdpc::SearchSpec search;
  search.fine_denominator = o.grid_denominator;
  return search;
}

void CheckFit(const pdpc_fit_options& o) {
  pdpc::Check(o.num_sets == 2 || o.num_sets == 4, ErrorCode::kInvalidArgument,
              "number of sets must be 2 or 4");
  pdpc::Check(o.max_iterations >= 1, ErrorCode::kInvalidArgument,
              "max_iterations must be positive");
  pdpc::Check(o.ridge >= 0.0, ErrorCode::kInvalidArgument, "ridge must be non-negative");
  pdpc::Check(o.threads >= 1, ErrorCode::kInvalidArgument, "threads must be positive");
}

std::string FormatParams(const pdpc::PdpcParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "c1v=%+.5f c2v=%+.5f c1h=%+.5f c2h=%+.5f dv=%d dh=%d a=%.5f k=%d",
                p.c1v, p.c2v, p.c1h, p.c2h, p.dv, p.dh, p.a, p.k);
  return buf;
}

// Count-weighted mean objective of the per-mode optimal predictors of a group,
// or nullopt when any member is singular.
std::optional<double> OracleBound(const pdpc::StatsTable& stats, pdpc::BlockSize size,
                                  const std::vector<int>& modes, double ridge) {
  double sum = 0.0;
  uint64_t total = 0;
  for (int m : modes) {
    const pdpc::ModeStats* s = stats.Find(size, pdpc::PredictionMode::Of(m));
    if (s == nullptr || s->count == 0) continue;
    try {
      const pdpc::OracleSolution sol = pdpc::SolveOptimal(*s, ridge);
      sum += pdpc::Objective(sol.h, *s) * static_cast<double>(s->count);
      total += s->count;
    } catch (const pdpc::Error& e) {
      if (e.code() != ErrorCode::kConditioning) throw;
      return std::nullopt;
    }
  }
  if (total == 0) return std::nullopt;
  return sum / static_cast<double>(total);
}

}  // namespace

extern "C" {

const char* pdpc_version(void) { return "1.0.0"; }

const char* pdpc_last_error(void) { return last_error.c_str(); }

const char* pdpc_status_name(pdpc_status status) {
  switch (status) {
    case PDPC_OK: return "ok";
    case PDPC_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case PDPC_ERROR_OUT_OF_BOUNDS: return "out of bounds";
    case PDPC_ERROR_IO: return "i/o error";
    case PDPC_ERROR_FORMAT: return "format error";
    case PDPC_ERROR_CONDITIONING: return "ill-conditioned";
    case PDPC_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pdpc_policy_init(pdpc_policy* policy) {
  if (policy == nullptr) return;
  policy->smoothing = 1;
  policy->edge_filters = 1;
}

void pdpc_corpus_options_init(pdpc_corpus_options* options) {
  if (options == nullptr) return;
  options->sizes = nullptr;
  options->num_sizes = 0;
  options->stride = 0;
  options->skip_padded = 0;
  options->centered = 0;
  pdpc_policy_init(&options->policy);
  options->threads = 1;
}

void pdpc_fit_options_init(pdpc_fit_options* options) {
  if (options == nullptr) return;
  options->num_sets = 2;
  options->grid_denominator = 32;
  options->max_iterations = 10;
  options->ridge = 1e-6;
  options->threads = 1;
  pdpc_policy_init(&options->policy);
}

// Images -------------------------------------------------------------------

pdpc_status pdpc_image_create(int width, int height, int bit_depth,
                              const uint16_t* samples, pdpc_image** out) {
  return Guard([&] {
    Require(out, "out");
    Require(samples, "samples");
    pdpc::Check(width > 0 && height > 0, ErrorCode::kInvalidArgument,
                "image dimensions must be positive");
    const size_t n = static_cast<size_t>(width) * static_cast<size_t>(height);
    *out = new pdpc_image{pdpc::GrayImage::Create(
        width, height, bit_depth, std::vector<uint16_t>(samples, samples + n))};
  });
}

pdpc_status pdpc_image_load_pgm(const char* path, pdpc_image** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new pdpc_image{pdpc::LoadPgm(path)};
  });
}

pdpc_status pdpc_image_load_yuv(const char* path, int width, int height, int bit_depth,
                                int frame_index, pdpc_image** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new pdpc_image{pdpc::LoadYuv(path, width, height, bit_depth, frame_index)};
  });
}

pdpc_status pdpc_image_save_pgm(const pdpc_image* image, const char* path) {
  return Guard([&] {
    Require(image, "image");
    Require(path, "path");
    pdpc::SavePgm(path, image->image);
  });
}

void pdpc_image_free(pdpc_image* image) { delete image; }
int pdpc_image_width(const pdpc_image* image) { return image ? image->image.width : 0; }
int pdpc_image_height(const pdpc_image* image) { return image ? image->image.height : 0; }
int pdpc_image_bit_depth(const pdpc_image* image) {
  return image ? image->image.bit_depth : 0;
}

// Single-block prediction ----------------------------------------------------

namespace {

pdpc::ExtractedBlock ExtractChecked(const pdpc_image* image, int x0, int y0, int n) {
  Require(image, "image");
  const pdpc::BlockSize size = ToSize(n);
  const pdpc::GrayImage& img = image->image;
  pdpc::Check(x0 >= 0 && y0 >= 0 && x0 + n <= img.width && y0 + n <= img.height,
              ErrorCode::kOutOfBounds, "block lies outside the image");
  return pdpc::ExtractBlock(img, x0, y0, size);
}

}  // namespace

pdpc_status pdpc_classify_block(const pdpc_image* image, int x0, int y0, int n,
                                pdpc_policy policy, int* mode) {
  return Guard([&] {
    Require(mode, "mode");
    const pdpc::ExtractedBlock b = ExtractChecked(image, x0, y0, n);
    *mode = pdpc::ClassifyBlock(b.block, b.refs, ToPolicy(policy)).index();
  });
}

pdpc_status pdpc_predict_block(const pdpc_image* image, int x0, int y0, int n, int mode,
                               const pdpc_params* params, pdpc_policy policy, int* out) {
  return Guard([&] {
    Require(out, "out");
    const pdpc::ExtractedBlock b = ExtractChecked(image, x0, y0, n);
    const pdpc::PredictionMode m = ToMode(mode);
    const pdpc::PredictionBlock pred =
        params == nullptr
            ? pdpc::PredictHevc(b.refs, m, ToPolicy(policy))
            : pdpc::PredictPdpcShortcut(b.refs, m, ToParams(*params), ToPolicy(policy));
    const int bit_depth = b.refs.bit_depth();
    for (size_t i = 0; i < pred.values().size(); ++i) {
      out[i] = pdpc::FinalizeSample(pred.values()[i], bit_depth);
    }
  });
}

// Statistics ---------------------------------------------------------------

pdpc_status pdpc_stats_accumulate(const pdpc_image* const* images, size_t num_images,
                                  const pdpc_corpus_options* options, pdpc_stats** out) {
  return Guard([&] {
    Require(options, "options");
    Require(out, "out");
    CheckCorpus(*options);
    const std::vector<pdpc::GrayImage> imgs = ToImages(images, num_images);
    pdpc::CorpusOptions co;
    co.sizes = ToSizes(*options);
    co.stride = options->stride;
    co.skip_padded = options->skip_padded != 0;
    co.centered = options->centered != 0;
    co.policy = ToPolicy(options->policy);
    co.threads = options->threads;
    *out = new pdpc_stats{pdpc::AccumulateCorpus(imgs, co)};
  });
}

pdpc_status pdpc_stats_load(const char* path, pdpc_stats** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new pdpc_stats{pdpc::LoadStats(path)};
  });
}

pdpc_status pdpc_stats_save(const pdpc_stats* stats, const char* path) {
  return Guard([&] {
    Require(stats, "stats");
    Require(path, "path");
    pdpc::SaveStats(path, stats->table);
  });
}

pdpc_status pdpc_stats_merge(pdpc_stats* into, const pdpc_stats* from) {
  return Guard([&] {
    Require(into, "into");
    Require(from, "from");
    into->table.Merge(from->table);
  });
}

void pdpc_stats_free(pdpc_stats* stats) { delete stats; }

size_t pdpc_stats_num_records(const pdpc_stats* stats) {
  return stats ? stats->table.entries().size() : 0;
}

uint64_t pdpc_stats_count(const pdpc_stats* stats, int n, int mode) {
  if (stats == nullptr || !pdpc::BlockSize::IsValid(n) || mode < 0 ||
      mode >= pdpc::kNumModes) {
    return 0;
  }
  const pdpc::ModeStats* s =
      stats->table.Find(pdpc::BlockSize::Of(n), pdpc::PredictionMode::Of(mode));
  return s ? s->count : 0;
}

// Predictor matrices ---------------------------------------------------------

pdpc_status pdpc_oracle_solve(const pdpc_stats* stats, double ridge, pdpc_matrices** out) {
  return Guard([&] {
    Require(stats, "stats");
    Require(out, "out");
    pdpc::Check(ridge >= 0.0, ErrorCode::kInvalidArgument, "ridge must be non-negative");
    auto result = std::make_unique<pdpc_matrices>();
    std::ostringstream report;
    report << "# N mode blocks lambda condition_estimate status\n";
    for (const auto& [key, s] : stats->table.entries()) {
      if (s.count == 0) continue;
      report << key.first << " " << key.second << " " << s.count << " ";
      try {
        pdpc::OracleSolution sol = pdpc::SolveOptimal(s, ridge);
        report << sol.lambda << " " << sol.condition_estimate << " ok\n";
        result->matrices.push_back(std::move(sol.h));
      } catch (const pdpc::Error& e) {
        if (e.code() != ErrorCode::kConditioning) throw;
        report << "- - singular: " << e.what() << "\n";
      }
    }
    result->report = report.str();
    *out = result.release();
  });
}

pdpc_status pdpc_library_realize(const pdpc_library* library, int n, int set,
                                 pdpc_policy policy, pdpc_matrices** out) {
  return Guard([&] {
    Require(library, "library");
    Require(out, "out");
    const pdpc::BlockSize size = ToSize(n);
    pdpc::Check(set >= 0 && set < library->library.num_sets(), ErrorCode::kInvalidArgument,
                "set index out of range");
    auto result = std::make_unique<pdpc_matrices>();
    for (int m = 0; m < pdpc::kNumModes; ++m) {
      const pdpc::PredictionMode mode = pdpc::PredictionMode::Of(m);
      result->matrices.push_back(pdpc::RealizeMatrix(
          size, mode, library->library.ForMode(size, mode, set), ToPolicy(policy)));
    }
    *out = result.release();
  });
}

pdpc_status pdpc_matrices_load(const char* path, pdpc_matrices** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new pdpc_matrices{pdpc::LoadMatrices(path), ""};
  });
}

pdpc_status pdpc_matrices_save(const pdpc_matrices* matrices, const char* path) {
  return Guard([&] {
    Require(matrices, "matrices");
    Require(path, "path");
    pdpc::SaveMatrices(path, matrices->matrices);
  });
}

void pdpc_matrices_free(pdpc_matrices* matrices) { delete matrices; }

size_t pdpc_matrices_count(const pdpc_matrices* matrices) {
  return matrices ? matrices->matrices.size() : 0;
}

pdpc_status pdpc_matrices_info(const pdpc_matrices* matrices, size_t index, int* n,
                               int* mode, int* kind) {
  return Guard([&] {
    Require(matrices, "matrices");
    pdpc::Check(index < matrices->matrices.size(), ErrorCode::kOutOfBounds,
                "matrix index out of range");
    const pdpc::PredictorMatrix& h = matrices->matrices[index];
    if (n) *n = h.size.n();
    if (mode) *mode = h.mode.index();
    if (kind) *kind = static_cast<int>(h.kind);
  });
}

pdpc_status pdpc_matrices_entries(const pdpc_matrices* matrices, size_t index, double* out,
                                  size_t capacity) {
  return Guard([&] {
    Require(matrices, "matrices");
    Require(out, "out");
    pdpc::Check(index < matrices->matrices.size(), ErrorCode::kOutOfBounds,
                "matrix index out of range");
    const pdpc::Matrix& e = matrices->matrices[index].entries;
    pdpc::Check(capacity >= static_cast<size_t>(e.size()), ErrorCode::kOutOfBounds,
                "output buffer too small");
    std::copy(e.data(), e.data() + e.size(), out);
  });
}

const char* pdpc_matrices_report(const pdpc_matrices* matrices) {
  return matrices ? matrices->report.c_str() : "";
}

pdpc_status pdpc_render_matrices(const pdpc_matrices* matrices, int n,
                                 pdpc_normalization normalization, int gutter,
                                 const char* path) {
  return Guard([&] {
    Require(matrices, "matrices");
    Require(path, "path");
    const pdpc::BlockSize size = ToSize(n);
    pdpc::Check(normalization == PDPC_NORMALIZE_GLOBAL ||
                    normalization == PDPC_NORMALIZE_PER_MATRIX,
                ErrorCode::kInvalidArgument, "unknown normalization");
    std::vector<pdpc::PredictorMatrix> selected;
    for (const pdpc::PredictorMatrix& h : matrices->matrices) {
      if (h.size == size) selected.push_back(h);
    }
    std::stable_sort(selected.begin(), selected.end(),
                     [](const auto& x, const auto& y) { return x.mode.index() < y.mode.index(); });
    pdpc::Check(!selected.empty(), ErrorCode::kInvalidArgument,
                "no matrices of size " + std::to_string(n));
    const pdpc::MatrixImage img = pdpc::RenderMatrixGrid(
        selected,
        normalization == PDPC_NORMALIZE_GLOBAL ? pdpc::Normalization::kGlobal
                                               : pdpc::Normalization::kPerMatrix,
        gutter);
    pdpc::WriteFile(path, pdpc::EncodePgm8(img.width, img.height, img.pixels));
  });
}

// Parameter libraries ------------------------------------------------------

pdpc_status pdpc_library_fit_stats(const pdpc_stats* stats, const pdpc_fit_options* options,
                                   pdpc_library** out) {
  return Guard([&] {
    Require(stats, "stats");
    Require(options, "options");
    Require(out, "out");
    CheckFit(*options);
    pdpc::Check(options->num_sets == 2, ErrorCode::kInvalidArgument,
                "fitting from statistics gives one set per group; "
                "four sets need a training corpus");
    const pdpc::SearchSpec search = ToSearch(*options);
    const pdpc::SmoothingPolicy policy = ToPolicy(options->policy);
    std::vector<pdpc::BlockSize> sizes;
    for (const auto& [key, s] : stats->table.entries()) {
      if (s.count > 0 && (sizes.empty() || sizes.back() != s.size)) sizes.push_back(s.size);
    }
    pdpc::Check(!sizes.empty(), ErrorCode::kInvalidArgument, "statistics are empty");

    auto result = std::make_unique<pdpc_library>(
        pdpc_library{pdpc::ParamLibrary(2, pdpc::ModeGroups::Default()), ""});
    const pdpc::ModeGroups& groups = result->library.groups();
    std::ostringstream report;
    report << "# per-block objectives without the constant term; lower is better\n";
    report << "# N group J_identity J_pdpc J_oracle params\n";
    for (pdpc::BlockSize size : sizes) {
      const std::vector<pdpc::FitResult> fits = pdpc::FitFromStats(
          stats->table, size, search, policy, result->library, options->threads);
      for (int g = 0; g < groups.num_groups(); ++g) {
        const pdpc::FitResult& f = fits[g];
        const std::optional<double> bound =
            OracleBound(stats->table, size, groups.Modes(g), options->ridge);
        char line[96];
        std::snprintf(line, sizeof(line), "%d %d %.6f %.6f ", size.n(), g,
                      f.identity_objective, f.objective);
        report << line;
        if (bound) {
          std::snprintf(line, sizeof(line), "%.6f ", *bound);
          report << line;
        } else {
          report << "- ";
        }
        report << FormatParams(f.params) << "\n";
      }
    }
    result->report = report.str();
    *out = result.release();
  });
}

pdpc_status pdpc_library_fit_corpus(const pdpc_image* const* images, size_t num_images,
                                    const pdpc_corpus_options* corpus,
                                    const pdpc_fit_options* options, const pdpc_library* base,
                                    pdpc_library** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(options, "options");
    Require(out, "out");
    CheckCorpus(*corpus);
    CheckFit(*options);
    const std::vector<pdpc::GrayImage> imgs = ToImages(images, num_images);
    const std::vector<pdpc::BlockSize> sizes = ToSizes(*corpus);

    pdpc::MultisetOptions mo;
    mo.num_sets = options->num_sets;
    mo.search = ToSearch(*options);
    mo.policy = ToPolicy(options->policy);
    mo.max_iterations = options->max_iterations;
    mo.threads = options->threads;

    const pdpc::ParamLibrary* base_lib = base ? &base->library : nullptr;
    auto result = std::make_unique<pdpc_library>(pdpc_library{
        pdpc::ParamLibrary(options->num_sets,
                           base_lib ? base_lib->groups() : pdpc::ModeGroups::Default()),
        ""});
    std::ostringstream report;
    report << "# N group set params\n";
    for (pdpc::BlockSize size : sizes) {
      std::vector<pdpc::LabeledBlock> blocks = pdpc::ClassifyBlocks(
          pdpc::CollectBlocks(imgs, size, corpus->stride, corpus->skip_padded != 0),
          mo.policy, mo.threads);
      pdpc::FitMultiset(blocks, size, mo, base_lib, result->library);
      const pdpc::ModeGroups& groups = result->library.groups();
      for (int g = 0; g < groups.num_groups(); ++g) {
        for (int s = 1; s < options->num_sets; ++s) {
          report << size.n() << " " << g << " " << s << " "
                 << FormatParams(result->library.Get(size, g, s)) << "\n";
        }
      }
    }
    result->report = report.str();
    *out = result.release();
  });
}

pdpc_status pdpc_library_identity(pdpc_library** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new pdpc_library{pdpc::ParamLibrary(1, pdpc::ModeGroups::Default()), ""};
  });
}

pdpc_status pdpc_library_load(const char* path, pdpc_library** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new pdpc_library{pdpc::LoadParams(path), ""};
  });
}

pdpc_status pdpc_library_save(const pdpc_library* library, const char* path) {
  return Guard([&] {
    Require(library, "library");
    Require(path, "path");
    pdpc::SaveParams(path, library->library);
  });
}

void pdpc_library_free(pdpc_library* library) { delete library; }

int pdpc_library_num_sets(const pdpc_library* library) {
  return library ? library->library.num_sets() : 0;
}

pdpc_status pdpc_library_params(const pdpc_library* library, int n, int mode, int set,
                                pdpc_params* out) {
  return Guard([&] {
    Require(library, "library");
    Require(out, "out");
    const pdpc::BlockSize size = ToSize(n);
    pdpc::Check(set >= 0 && set < library->library.num_sets(), ErrorCode::kInvalidArgument,
                "set index out of range");
    *out = FromParams(library->library.ForMode(size, ToMode(mode), set));
  });
}

const char* pdpc_library_report(const pdpc_library* library) {
  return library ? library->report.c_str() : "";
}

// Evaluation ---------------------------------------------------------------

pdpc_status pdpc_evaluate(const pdpc_image* const* images, size_t num_images,
                          const pdpc_library* library, const pdpc_matrices* oracle,
                          const pdpc_corpus_options* options, pdpc_report** out) {
  return Guard([&] {
    Require(library, "library");
    Require(options, "options");
    Require(out, "out");
    CheckCorpus(*options);
    const std::vector<pdpc::GrayImage> imgs = ToImages(images, num_images);
    pdpc::EvalOptions eo;
    eo.sizes = ToSizes(*options);
    eo.stride = options->stride;
    eo.skip_padded = options->skip_padded != 0;
    eo.policy = ToPolicy(options->policy);
    eo.threads = options->threads;
    auto result = std::make_unique<pdpc_report>();
    result->report =
        pdpc::Evaluate(imgs, library->library, eo, oracle ? &oracle->matrices : nullptr);
    result->text = result->report.ToText();
    result->json = result->report.ToJson();
    *out = result.release();
  });
}

void pdpc_report_free(pdpc_report* report) { delete report; }

const char* pdpc_report_text(const pdpc_report* report) {
  return report ? report->text.c_str() : "";
}

const char* pdpc_report_json(const pdpc_report* report) {
  return report ? report->json.c_str() : "";
}

pdpc_status pdpc_report_totals(const pdpc_report* report, pdpc_totals* out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    const pdpc::ModeReport t = report->report.Total();
    out->blocks = t.count;
    out->hevc_sse = t.hevc_sse;
    out->selected_sse = t.selected_sse;
    out->oracle_sse = report->report.has_oracle ? t.oracle_sse : 0;
    out->reduction_percent = report->report.ReductionPercent();
  });
}

}  // extern "C"
