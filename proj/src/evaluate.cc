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

#include "src/evaluate.h"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "src/io.h"
#include "src/parallel.h"
#include "src/pdpc_predictor.h"
#include "src/status.h"
#include "src/training.h"

namespace pdpc {

void ModeReport::Add(const ModeReport& o) {
  count += o.count;
  hevc_sse += o.hevc_sse;
  selected_sse += o.selected_sse;
  oracle_sse += o.oracle_sse;
  for (size_t s = 0; s < set_sse.size(); ++s) {
    set_sse[s] += o.set_sse[s];
    histogram[s] += o.histogram[s];
    selected_sse_by_set[s] += o.selected_sse_by_set[s];
  }
}

ModeReport EvalReport::Total() const {
  ModeReport total(num_sets);
  for (const auto& [key, r] : modes) total.Add(r);
  return total;
}

double EvalReport::ReductionPercent() const {
  const ModeReport t = Total();
  if (t.hevc_sse == 0) return 0.0;
  return 100.0 * static_cast<double>(t.hevc_sse - t.selected_sse) /
         static_cast<double>(t.hevc_sse);
}

uint64_t Fnv1a(std::span<const uint8_t> bytes, uint64_t seed) {
  uint64_t h = seed;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

double Mean(int64_t sse, uint64_t count) {
  return count == 0 ? 0.0 : static_cast<double>(sse) / static_cast<double>(count);
}

const PredictorMatrix* FindMatrix(const std::vector<PredictorMatrix>* set, BlockSize size,
                                  PredictionMode mode) {
  if (set == nullptr) return nullptr;
  for (const PredictorMatrix& h : *set) {
    if (h.size == size && h.mode == mode) return &h;
  }
  return nullptr;
}

}  // namespace

EvalReport Evaluate(std::span<const GrayImage> images, const ParamLibrary& library,
                    const EvalOptions& options, const std::vector<PredictorMatrix>* oracle) {
  Check(!options.sizes.empty(), ErrorCode::kInvalidArgument, "no block sizes to evaluate");
  for (BlockSize size : options.sizes) {
    Check(library.Covers(size), ErrorCode::kInvalidArgument,
          "parameter library has no entries for N=" + std::to_string(size.n()));
  }
  EvalReport report;
  report.num_sets = library.num_sets();
  report.has_oracle = oracle != nullptr;

  std::ostringstream config;
  config << "sizes=";
  for (BlockSize s : options.sizes) config << s.n() << ",";
  config << " stride=" << options.stride << " skip_padded=" << options.skip_padded
         << " smoothing=" << options.policy.enabled
         << " edge_filters=" << options.policy.edge_filters
         << " oracle=" << report.has_oracle << " images=" << images.size();
  report.config = config.str();

  uint64_t digest = Fnv1a({reinterpret_cast<const uint8_t*>(report.config.data()),
                           report.config.size()});
  const std::string params = ParamsToJson(library);
  digest = Fnv1a({reinterpret_cast<const uint8_t*>(params.data()), params.size()}, digest);
  for (const GrayImage& img : images) {
    const int dims[3] = {img.width, img.height, img.bit_depth};
    digest = Fnv1a({reinterpret_cast<const uint8_t*>(dims), sizeof(dims)}, digest);
    digest = Fnv1a({reinterpret_cast<const uint8_t*>(img.samples.data()),
                    img.samples.size() * sizeof(uint16_t)},
                   digest);
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016" PRIx64, digest);
  report.digest = hex;

  const int num_sets = library.num_sets();
  for (BlockSize size : options.sizes) {
    const std::vector<ExtractedBlock> blocks =
        CollectBlocks(images, size, options.stride, options.skip_padded);
    const size_t chunks = NumChunks(blocks.size(), options.threads);
    std::vector<std::map<int, ModeReport>> partial(chunks);
    ParallelChunks(blocks.size(), options.threads, [&](size_t w, size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        const ExtractedBlock& b = blocks[i];
        const int bit_depth = b.refs.bit_depth();
        const PredictionMode mode = ClassifyBlock(b.block, b.refs, options.policy);
        auto [it, inserted] = partial[w].try_emplace(mode.index(), num_sets);
        ModeReport& r = it->second;

        std::vector<int64_t> sse(num_sets);
        sse[0] = FinalizedSse(b.block, PredictHevc(b.refs, mode, options.policy), bit_depth);
        for (int s = 1; s < num_sets; ++s) {
          const PdpcParams p = library.ForMode(size, mode, s);
          sse[s] = FinalizedSse(
              b.block, PredictPdpcShortcut(b.refs, mode, p, options.policy), bit_depth);
        }
        int best = 0;
        for (int s = 1; s < num_sets; ++s) {
          if (sse[s] < sse[best]) best = s;
        }
        ++r.count;
        r.hevc_sse += sse[0];
        for (int s = 0; s < num_sets; ++s) r.set_sse[s] += sse[s];
        ++r.histogram[best];
        r.selected_sse_by_set[best] += sse[best];
        r.selected_sse += sse[best];
        if (oracle != nullptr) {
          const PredictorMatrix* h = FindMatrix(oracle, size, mode);
          r.oracle_sse += h != nullptr ? FinalizedSse(b.block, h->Apply(b.refs), bit_depth)
                                       : sse[0];
        }
      }
    });
    for (const auto& part : partial) {
      for (const auto& [mode, r] : part) {
        auto [it, inserted] = report.modes.try_emplace({size.n(), mode}, num_sets);
        it->second.Add(r);
      }
    }
  }
  return report;
}

std::string EvalReport::ToText() const {
  std::ostringstream out;
  out << "# PDPC evaluation report\n";
  out << "# digest " << digest << "  (" << config << ")\n";
  out << "# SSE is measured on rounded and clipped predictions; fitting minimizes the\n"
      << "# real-valued trace objective, so the two need not agree exactly.\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%4s %4s %8s %14s %14s", "N", "mode", "blocks",
                "mean_hevc", "mean_selected");
  out << line;
  for (int s = 0; s < num_sets; ++s) {
    std::snprintf(line, sizeof(line), " %14s", ("mean_set" + std::to_string(s)).c_str());
    out << line;
  }
  for (int s = 0; s < num_sets; ++s) {
    std::snprintf(line, sizeof(line), " %6s", ("n_set" + std::to_string(s)).c_str());
    out << line;
  }
  out << "\n";
  for (const auto& [key, r] : modes) {
    std::snprintf(line, sizeof(line), "%4d %4d %8" PRIu64 " %14.3f %14.3f", key.first,
                  key.second, r.count, Mean(r.hevc_sse, r.count),
                  Mean(r.selected_sse, r.count));
    out << line;
    for (int64_t sse : r.set_sse) {
      std::snprintf(line, sizeof(line), " %14.3f", Mean(sse, r.count));
      out << line;
    }
    for (uint64_t h : r.histogram) {
      std::snprintf(line, sizeof(line), " %6" PRIu64, h);
      out << line;
    }
    out << "\n";
  }
  const ModeReport t = Total();
  out << "blocks " << t.count << "\n";
  out << "hevc_sse " << t.hevc_sse << "\n";
  out << "selected_sse " << t.selected_sse << "\n";
  if (has_oracle) out << "oracle_sse " << t.oracle_sse << "\n";
  std::snprintf(line, sizeof(line), "sse_reduction_percent %.4f\n", ReductionPercent());
  out << line;
  return out.str();
}

std::string EvalReport::ToJson() const {
  nlohmann::json doc;
  doc["digest"] = digest;
  doc["config"] = config;
  doc["num_sets"] = num_sets;
  doc["sse_domain"] = "rounded-clipped integer predictions";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [key, r] : modes) {
    nlohmann::json row{{"N", key.first},
                       {"mode", key.second},
                       {"blocks", r.count},
                       {"hevc_sse", r.hevc_sse},
                       {"mean_hevc_sse", Mean(r.hevc_sse, r.count)},
                       {"set_sse", r.set_sse},
                       {"selected_histogram", r.histogram},
                       {"selected_sse_by_set", r.selected_sse_by_set},
                       {"selected_sse", r.selected_sse}};
    nlohmann::json means = nlohmann::json::array();
    for (int64_t s : r.set_sse) means.push_back(Mean(s, r.count));
    row["mean_set_sse"] = std::move(means);
    if (has_oracle) row["oracle_sse"] = r.oracle_sse;
    rows.push_back(std::move(row));
  }
  doc["modes"] = std::move(rows);
  const ModeReport t = Total();
  doc["total"] = {{"blocks", t.count},
                  {"hevc_sse", t.hevc_sse},
                  {"selected_sse", t.selected_sse},
                  {"selected_histogram", t.histogram},
                  {"selected_sse_by_set", t.selected_sse_by_set},
                  {"sse_reduction_percent", ReductionPercent()}};
  if (has_oracle) doc["total"]["oracle_sse"] = t.oracle_sse;
  return doc.dump(2) + "\n";
}

}  // namespace pdpc
