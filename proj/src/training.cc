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

#include "src/training.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "src/parallel.h"
#include "src/status.h"

namespace pdpc {

// ---------------------------------------------------------------------------
// Statistics

void ModeStats::Add(std::span<const double> v, std::span<const double> r) {
  Check(static_cast<int>(v.size()) == size.num_pixels() &&
            static_cast<int>(r.size()) == size.num_refs(),
        ErrorCode::kInvalidArgument, "sample dimensions do not match block size");
  const Eigen::Map<const Vector> rv(r.data(), r.size());
  const Eigen::Map<const Vector> vv(v.data(), v.size());
  p.noalias() += rv * rv.transpose();
  q.noalias() += vv * rv.transpose();
  ++count;
}

void ModeStats::Merge(const ModeStats& other) {
  Check(other.size == size && other.mode == mode, ErrorCode::kInvalidArgument,
        "merging statistics of different (N, mode)");
  p += other.p;
  q += other.q;
  count += other.count;
}

ModeStats& StatsTable::At(BlockSize size, PredictionMode mode) {
  auto it = entries_.find({size.n(), mode.index()});
  if (it == entries_.end()) {
    it = entries_.emplace(Key{size.n(), mode.index()}, ModeStats(size, mode)).first;
  }
  return it->second;
}

const ModeStats* StatsTable::Find(BlockSize size, PredictionMode mode) const {
  const auto it = entries_.find({size.n(), mode.index()});
  return it == entries_.end() ? nullptr : &it->second;
}

void StatsTable::Merge(const StatsTable& other) {
  for (const auto& [key, stats] : other.entries_) At(stats.size, stats.mode).Merge(stats);
}

std::vector<ExtractedBlock> CollectBlocks(std::span<const GrayImage> images,
                                          BlockSize size, int stride, bool skip_padded) {
  const int step = stride > 0 ? stride : size.n();
  std::vector<ExtractedBlock> out;
  for (const GrayImage& image : images) {
    for (int y = 0; y + size.n() <= image.height; y += step) {
      for (int x = 0; x + size.n() <= image.width; x += step) {
        ExtractedBlock b = ExtractBlock(image, x, y, size);
        if (skip_padded && b.substituted) continue;
        out.push_back(std::move(b));
      }
    }
  }
  return out;
}

PredictionMode ClassifyBlock(const BlockView& block, const ReferenceArray& refs,
                             SmoothingPolicy policy) {
  int best_mode = 0;
  int64_t best_sse = std::numeric_limits<int64_t>::max();
  for (int m = 0; m < kNumModes; ++m) {
    const PredictionBlock pred =
        PredictHevc(refs, PredictionMode::Of(m), policy, Arithmetic::kInteger);
    const int64_t sse = FinalizedSse(block, pred, refs.bit_depth());
    if (sse < best_sse) {
      best_sse = sse;
      best_mode = m;
    }
  }
  return PredictionMode::Of(best_mode);
}

std::vector<LabeledBlock> ClassifyBlocks(std::vector<ExtractedBlock> blocks,
                                         SmoothingPolicy policy, int threads) {
  std::vector<int> modes(blocks.size(), 0);
  ParallelChunks(blocks.size(), threads, [&](size_t, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      modes[i] = ClassifyBlock(blocks[i].block, blocks[i].refs, policy).index();
    }
  });
  std::vector<LabeledBlock> out;
  out.reserve(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) {
    out.push_back({std::move(blocks[i].block), std::move(blocks[i].refs),
                   PredictionMode::Of(modes[i])});
  }
  return out;
}

namespace {

void AddBlock(const LabeledBlock& b, bool centered, StatsTable& table) {
  std::vector<double> r = b.refs.ToVector();
  std::vector<double> v(b.block.samples.begin(), b.block.samples.end());
  if (centered) {
    // Scaled by 4N+1 so the centered values stay integers; undone once the
    // sums are complete.
    const double m = static_cast<double>(r.size());
    const double sum = std::accumulate(r.begin(), r.end(), 0.0);
    for (double& x : r) x = m * x - sum;
    for (double& x : v) x = m * x - sum;
  }
  table.At(b.refs.size(), b.mode).Add(v, r);
}

}  // namespace

StatsTable AccumulateStats(std::span<const LabeledBlock> blocks, bool centered,
                           int threads) {
  std::vector<StatsTable> partial(NumChunks(blocks.size(), threads));
  ParallelChunks(blocks.size(), threads, [&](size_t w, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) AddBlock(blocks[i], centered, partial[w]);
  });
  StatsTable total;
  for (const StatsTable& t : partial) total.Merge(t);
  if (centered) {
    for (auto& [key, stats] : total.entries()) {
      const double m = stats.size.num_refs();
      stats.p /= m * m;
      stats.q /= m * m;
    }
  }
  return total;
}

StatsTable AccumulateCorpus(std::span<const GrayImage> images,
                            const CorpusOptions& options) {
  StatsTable total;
  for (BlockSize size : options.sizes) {
    const std::vector<LabeledBlock> blocks = ClassifyBlocks(
        CollectBlocks(images, size, options.stride, options.skip_padded), options.policy,
        options.threads);
    total.Merge(AccumulateStats(blocks, options.centered, options.threads));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Optimal predictor and objective

OracleSolution SolveOptimal(const ModeStats& stats, double ridge) {
  Check(stats.count > 0, ErrorCode::kInvalidArgument,
        "mode " + std::to_string(stats.mode.index()) + " has no training blocks");
  Check(ridge >= 0.0, ErrorCode::kInvalidArgument, "ridge must be non-negative");
  const int m = stats.size.num_refs();
  Matrix system = stats.MeanP();
  const double lambda = ridge * system.trace() / m;
  system.diagonal().array() += lambda;

  const Eigen::LDLT<Matrix> ldlt(system);
  // The rcond estimate misses exact zero pivots, so the pivot spread also bounds it.
  double rcond = 0.0;
  if (ldlt.info() == Eigen::Success) {
    const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
    const double dmax = d.maxCoeff();
    rcond = dmax > 0.0 ? std::min(ldlt.rcond(), d.minCoeff() / dmax) : 0.0;
  }
  if (!(rcond > 1e-15) || !ldlt.isPositive()) {
    std::ostringstream msg;
    msg << "reference correlation of N=" << stats.size.n() << " mode "
        << stats.mode.index() << " is singular (condition estimate "
        << (rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity())
        << "); increase the ridge";
    Fail(ErrorCode::kConditioning, msg.str());
  }
  OracleSolution sol{PredictorMatrix(stats.size, stats.mode, MatrixKind::kOracle),
                     lambda, 1.0 / rcond};
  const Matrix qt = stats.MeanQ().transpose();
  sol.h.entries = ldlt.solve(qt).transpose();
  return sol;
}

double Objective(const Matrix& h, const ModeStats& stats) {
  Check(h.rows() == stats.size.num_pixels() && h.cols() == stats.size.num_refs(),
        ErrorCode::kInvalidArgument, "predictor matrix does not match statistics");
  Check(stats.count > 0, ErrorCode::kInvalidArgument, "objective of empty statistics");
  // Raw sums scaled once at the end; equal to using the means.
  const Matrix hp = h * stats.p;
  return (hp.cwiseProduct(h).sum() - 2.0 * h.cwiseProduct(stats.q).sum()) /
         static_cast<double>(stats.count);
}

// ---------------------------------------------------------------------------
// PDPC parameter search

double Quadratic::Eval(const std::array<double, 4>& c) const {
  double j = j0;
  for (int i = 0; i < 4; ++i) {
    double mc = 0.0;
    for (int k = 0; k < 4; ++k) mc += m[i][k] * c[k];
    j += c[i] * (2.0 * g[i] + mc);
  }
  return j;
}

void Quadratic::Add(const Quadratic& other) {
  j0 += other.j0;
  for (int i = 0; i < 4; ++i) {
    g[i] += other.g[i];
    for (int k = 0; k < 4; ++k) m[i][k] += other.m[i][k];
  }
}

namespace {

using SparseRow = std::vector<std::pair<int, double>>;

// Rows of the real-arithmetic inner HEVC predictor, nonzeros only.
std::vector<SparseRow> InnerHevcRows(BlockSize size, PredictionMode mode,
                                     SmoothingPolicy policy) {
  const PredictorMatrix h = RealizeHevcMatrix(size, mode, InnerPolicy(policy));
  std::vector<SparseRow> rows(size.num_pixels());
  for (int i = 0; i < size.num_pixels(); ++i) {
    for (int j = 0; j < size.num_refs(); ++j) {
      if (h.entries(i, j) != 0.0) rows[i].emplace_back(j, h.entries(i, j));
    }
  }
  return rows;
}

// With H = H_s + sum_i c_i B_i, where H_s = H_hevc F and row (x, y) of B_i is
// w_i (e_{j_i} - h_s), every term of Tr(H P H^T) - 2 Tr(H Q^T) reduces to
// z = P h_s^T, s0 = h_s z and entries of P and Q.
Quadratic QuadraticFromRows(const ModeStats& stats, const std::vector<SparseRow>& rows,
                            const Matrix& filter, int d) {
  const BlockSize size = stats.size;
  const int n = size.n();
  const int m = size.num_refs();
  const Matrix pft = stats.p * filter.transpose();
  Vector hs(m);
  Vector z(m);
  Quadratic quad;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const int row = y * n + x;
      hs.setZero();
      z.setZero();
      for (const auto& [col, w] : rows[row]) {
        hs.noalias() += w * filter.row(col).transpose();
        z.noalias() += w * pft.col(col);
      }
      const auto qrow = stats.q.row(row);
      const double s0 = hs.dot(z);
      const double hq = qrow.dot(hs);
      const double wy = DecayWeight(y, d);
      const double wx = DecayWeight(x, d);
      const std::array<double, 4> w = {wy, -wy, wx, -wx};
      const std::array<int, 4> j = {1 + x, 0, 1 + 2 * n + y, 0};
      quad.j0 += s0 - 2.0 * hq;
      for (int a = 0; a < 4; ++a) {
        quad.g[a] += w[a] * (z[j[a]] - s0 - qrow[j[a]] + hq);
        for (int b = 0; b < 4; ++b) {
          quad.m[a][b] +=
              w[a] * w[b] * (stats.p(j[a], j[b]) - z[j[a]] - z[j[b]] + s0);
        }
      }
    }
  }
  return quad;
}

struct Candidate {
  double j = std::numeric_limits<double>::infinity();
  std::array<double, 4> c{};
};

Candidate SearchC(const Quadratic& quad, const SearchSpec& search) {
  Candidate best;
  const int cd = search.coarse_denominator;
  std::array<double, 4> c{};
  for (int i0 = -cd; i0 <= cd; ++i0) {
    c[0] = static_cast<double>(i0) / cd;
    for (int i1 = -cd; i1 <= cd; ++i1) {
      c[1] = static_cast<double>(i1) / cd;
      for (int i2 = -cd; i2 <= cd; ++i2) {
        c[2] = static_cast<double>(i2) / cd;
        for (int i3 = -cd; i3 <= cd; ++i3) {
          c[3] = static_cast<double>(i3) / cd;
          const double j = quad.Eval(c);
          if (j < best.j) best = {j, c};
        }
      }
    }
  }
  const int fd = search.fine_denominator;
  for (int sweep = 0; sweep < search.sweeps; ++sweep) {
    for (int coord = 0; coord < 4; ++coord) {
      std::array<double, 4> trial = best.c;
      for (int i = -fd; i <= fd; ++i) {
        trial[coord] = static_cast<double>(i) / fd;
        const double j = quad.Eval(trial);
        if (j < best.j) best = {j, trial};
      }
    }
  }
  return best;
}

struct Combo {
  double a;
  int k;
};

std::vector<Combo> Combos(const SearchSpec& search) {
  std::vector<Combo> out;
  for (int ia = 0; ia <= search.a_denominator; ++ia) {
    const double a = static_cast<double>(ia) / search.a_denominator;
    for (int k : search.orders) {
      out.push_back({a, k});
      if (ia == search.a_denominator) break;  // a = 1 ignores k
    }
  }
  return out;
}

}  // namespace

Quadratic PdpcQuadratic(const ModeStats& stats, double a, int k, int d,
                        SmoothingPolicy policy) {
  return QuadraticFromRows(stats, InnerHevcRows(stats.size, stats.mode, policy),
                           FilterMatrix(stats.size, a, k), d);
}

FitResult FitParams(std::span<const ModeStats* const> stats, BlockSize size,
                    const SearchSpec& search, SmoothingPolicy policy, int threads) {
  Check(search.coarse_denominator > 0 && search.fine_denominator > 0 &&
            search.a_denominator > 0 && !search.orders.empty(),
        ErrorCode::kInvalidArgument, "empty search grid");
  uint64_t total = 0;
  for (const ModeStats* s : stats) {
    Check(s->size == size, ErrorCode::kInvalidArgument, "mixed block sizes in fit");
    total += s->count;
  }
  Check(total > 0, ErrorCode::kInvalidArgument, "no training blocks to fit");

  std::vector<std::vector<SparseRow>> rows;
  for (const ModeStats* s : stats) rows.push_back(InnerHevcRows(size, s->mode, policy));

  const int d = SizeRule(size);
  const std::vector<Combo> combos = Combos(search);
  std::vector<Candidate> results(combos.size());
  ParallelChunks(combos.size(), threads, [&](size_t, size_t begin, size_t end) {
    for (size_t ci = begin; ci < end; ++ci) {
      const Matrix filter = FilterMatrix(size, combos[ci].a, combos[ci].k);
      Quadratic quad;
      for (size_t i = 0; i < stats.size(); ++i) {
        if (stats[i]->count > 0) quad.Add(QuadraticFromRows(*stats[i], rows[i], filter, d));
      }
      results[ci] = SearchC(quad, search);
    }
  });

  size_t best = 0;
  for (size_t ci = 1; ci < results.size(); ++ci) {
    if (results[ci].j < results[best].j) best = ci;
  }

  // Identity point: a = 1, c = 0.
  Quadratic identity;
  const Matrix eye = Matrix::Identity(size.num_refs(), size.num_refs());
  for (size_t i = 0; i < stats.size(); ++i) {
    if (stats[i]->count > 0) identity.Add(QuadraticFromRows(*stats[i], rows[i], eye, d));
  }

  FitResult fit;
  fit.params.c1v = results[best].c[0];
  fit.params.c2v = results[best].c[1];
  fit.params.c1h = results[best].c[2];
  fit.params.c2h = results[best].c[3];
  fit.params.dv = fit.params.dh = d;
  fit.params.a = combos[best].a;
  fit.params.k = combos[best].k;
  fit.objective = results[best].j / static_cast<double>(total);
  fit.identity_objective = identity.j0 / static_cast<double>(total);
  return fit;
}

FitResult FitParams(const ModeStats& stats, const SearchSpec& search,
                    SmoothingPolicy policy, int threads) {
  const ModeStats* one[] = {&stats};
  return FitParams(one, stats.size, search, policy, threads);
}

std::vector<FitResult> FitFromStats(const StatsTable& stats, BlockSize size,
                                    const SearchSpec& search, SmoothingPolicy policy,
                                    ParamLibrary& library, int threads) {
  const ModeGroups& groups = library.groups();
  std::vector<FitResult> results;
  for (int g = 0; g < groups.num_groups(); ++g) {
    std::vector<const ModeStats*> members;
    for (int m : groups.Modes(g)) {
      const ModeStats* s = stats.Find(size, PredictionMode::Of(m));
      if (s != nullptr && s->count > 0) members.push_back(s);
    }
    FitResult fit;
    fit.params = PdpcParams::Identity(size);
    if (!members.empty()) fit = FitParams(members, size, search, policy, threads);
    for (int set = 1; set < library.num_sets(); ++set) library.Put(size, g, set, fit.params);
    results.push_back(fit);
  }
  return results;
}

// ---------------------------------------------------------------------------
// Multi-set refinement

namespace {

struct GroupData {
  std::vector<const LabeledBlock*> blocks;
};

// Real-valued SSE of every block under `params`. Set 0 is the HEVC predictor
// itself, as used at evaluation time.
std::vector<double> SetSse(const std::vector<const LabeledBlock*>& blocks,
                           const PdpcParams& params, bool hevc, SmoothingPolicy policy) {
  std::vector<double> sse(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) {
    const LabeledBlock& b = *blocks[i];
    const PredictionBlock pred =
        hevc ? PredictHevc(b.refs, b.mode, policy, Arithmetic::kReal)
             : PredictPdpcShortcut(b.refs, b.mode, params, policy);
    sse[i] = RealSse(b.block, pred);
  }
  return sse;
}

PdpcParams FitOnBlocks(const std::vector<const LabeledBlock*>& blocks,
                       const std::vector<size_t>& members, BlockSize size,
                       const MultisetOptions& options) {
  StatsTable table;
  for (size_t i : members) {
    const std::vector<double> r = blocks[i]->refs.ToVector();
    const std::vector<double> v(blocks[i]->block.samples.begin(),
                                blocks[i]->block.samples.end());
    table.At(size, blocks[i]->mode).Add(v, r);
  }
  std::vector<const ModeStats*> stats;
  for (const auto& [key, s] : table.entries()) stats.push_back(&s);
  return FitParams(stats, size, options.search, options.policy).params;
}

// Indices of the ceil(n / num_sets) blocks with the largest selected SSE.
std::vector<size_t> HighestSseQuantile(const std::vector<double>& selected, int num_sets) {
  std::vector<size_t> order(selected.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return selected[a] > selected[b]; });
  const size_t keep = std::max<size_t>(1, (selected.size() + num_sets - 1) / num_sets);
  order.resize(std::min(keep, order.size()));
  return order;
}

void RefineGroup(const std::vector<const LabeledBlock*>& blocks, BlockSize size, const MultisetOptions& options,
                 std::vector<PdpcParams>& params, int first_trainable,
                 const std::vector<int>& group_modes) {
  const int num_sets = options.num_sets;
  const size_t n = blocks.size();
  std::vector<std::vector<double>> sse(num_sets);
  for (int s = 0; s < first_trainable; ++s) {
    sse[s] = SetSse(blocks, params[s], s == 0, options.policy);
  }
  auto selected_sse = [&](int upto) {
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    for (int s = 0; s < upto; ++s) {
      for (size_t i = 0; i < n; ++i) best[i] = std::min(best[i], sse[s][i]);
    }
    return best;
  };
  auto assign = [&] {
    std::vector<int> a(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (int s = 1; s < num_sets; ++s) {
        if (sse[s][i] < sse[a[i]][i]) a[i] = s;
      }
    }
    return a;
  };
  auto fit_set = [&](int s, std::vector<size_t> members) {
    if (members.empty()) members = HighestSseQuantile(selected_sse(s), num_sets);
    params[s] = FitOnBlocks(blocks, members, size, options);
    sse[s] = SetSse(blocks, params[s], false, options.policy);
  };

  // Initial fits on a split of the group's modes.
  const int trainable = num_sets - first_trainable;
  for (int t = 0; t < trainable; ++t) {
    const size_t lo = group_modes.size() * t / trainable;
    const size_t hi = group_modes.size() * (t + 1) / trainable;
    std::vector<size_t> members;
    for (size_t i = 0; i < n; ++i) {
      const auto it = std::find(group_modes.begin(), group_modes.end(),
                                blocks[i]->mode.index());
      const size_t pos = static_cast<size_t>(it - group_modes.begin());
      if (pos >= lo && pos < hi) members.push_back(i);
    }
    fit_set(first_trainable + t, std::move(members));
  }

  std::vector<int> assignment = assign();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (int s = first_trainable; s < num_sets; ++s) {
      std::vector<size_t> members;
      for (size_t i = 0; i < n; ++i) {
        if (assignment[i] == s) members.push_back(i);
      }
      fit_set(s, std::move(members));
    }
    const std::vector<int> next = assign();
    size_t changes = 0;
    for (size_t i = 0; i < n; ++i) changes += next[i] != assignment[i];
    assignment = next;
    if (static_cast<double>(changes) < options.change_fraction * static_cast<double>(n)) {
      break;
    }
  }
}

}  // namespace

void FitMultiset(std::span<const LabeledBlock> blocks, BlockSize size,
                 const MultisetOptions& options, const ParamLibrary* base,
                 ParamLibrary& library) {
  Check(options.num_sets == library.num_sets(), ErrorCode::kInvalidArgument,
        "library set count does not match the requested sets");
  Check(options.num_sets >= 2, ErrorCode::kInvalidArgument,
        "multi-set fitting needs at least two sets");
  const ModeGroups& groups = library.groups();
  int first_trainable = 1;
  if (base != nullptr) {
    Check(base->groups().lists() == groups.lists(), ErrorCode::kInvalidArgument,
          "base library uses different mode groups");
    Check(base->num_sets() <= options.num_sets, ErrorCode::kInvalidArgument,
          "base library has more sets than requested");
    Check(base->Covers(size), ErrorCode::kInvalidArgument,
          "base library lacks entries for N=" + std::to_string(size.n()));
    first_trainable = base->num_sets();
  }

  std::vector<GroupData> data(groups.num_groups());
  for (const LabeledBlock& b : blocks) {
    Check(b.refs.size() == size, ErrorCode::kInvalidArgument,
          "block size differs from the fitted size");
    data[groups.GroupOf(b.mode)].blocks.push_back(&b);
  }

  std::vector<std::vector<PdpcParams>> params(groups.num_groups());
  ParallelChunks(groups.num_groups(), options.threads, [&](size_t, size_t begin, size_t end) {
    for (size_t g = begin; g < end; ++g) {
      std::vector<PdpcParams>& p = params[g];
      p.assign(options.num_sets, PdpcParams::Identity(size));
      for (int s = 1; s < first_trainable; ++s) p[s] = base->Get(size, static_cast<int>(g), s);
      if (!data[g].blocks.empty() && first_trainable < options.num_sets) {
        RefineGroup(data[g].blocks, size, options, p, first_trainable,
                    groups.Modes(static_cast<int>(g)));
      }
    }
  });
  for (int g = 0; g < groups.num_groups(); ++g) {
    for (int s = 1; s < options.num_sets; ++s) library.Put(size, g, s, params[g][s]);
  }
}

}  // namespace pdpc
