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
// -----------------------------------------------------------------------------
//
//  File formats.
//
//  Images: binary PGM (P5, maxval 255 or 1023; 16-bit samples big-endian)
//  and the luma plane of raw planar YUV 4:2:0 (10-bit samples are two bytes,
//  little-endian).
//
//  Statistics ("PDPCST01"): the magic, then per record
//    u32 N, u32 mode, u64 count, (4N+1)^2 P entries, N^2 (4N+1) Q entries,
//  all little-endian, matrices as float64 row-major.
//
//  Matrices ("PDPCHM01"): the magic, then per matrix
//    u32 mode, u32 N, u8 kind, N^2 (4N+1) float64 row-major.
//
//  Parameters: JSON, see ParamsToJson().
//

#ifndef PDPC_SRC_IO_H_
#define PDPC_SRC_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "src/block.h"
#include "src/matrix.h"
#include "src/param_library.h"
#include "src/training.h"

namespace pdpc {

GrayImage ParsePgm(const std::string& bytes);
GrayImage LoadPgm(const std::string& path);
void SavePgm(const std::string& path, const GrayImage& image);
// Writes 8-bit samples as P5 with maxval 255.
std::string EncodePgm8(int width, int height, const std::vector<uint8_t>& pixels);

GrayImage LoadYuv(const std::string& path, int width, int height, int bit_depth,
                  int frame_index);

void WriteStats(std::ostream& out, const StatsTable& stats);
StatsTable ReadStats(std::istream& in);
void SaveStats(const std::string& path, const StatsTable& stats);
StatsTable LoadStats(const std::string& path);

void WriteMatrices(std::ostream& out, const std::vector<PredictorMatrix>& matrices);
std::vector<PredictorMatrix> ReadMatrices(std::istream& in);
void SaveMatrices(const std::string& path, const std::vector<PredictorMatrix>& matrices);
std::vector<PredictorMatrix> LoadMatrices(const std::string& path);

// c's and a are stored as integer numerators over 32.
constexpr int kParamDenominator = 32;
std::string ParamsToJson(const ParamLibrary& library);
ParamLibrary ParamsFromJson(const std::string& text);
void SaveParams(const std::string& path, const ParamLibrary& library);
ParamLibrary LoadParams(const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& bytes);

}  // namespace pdpc

#endif  // PDPC_SRC_IO_H_
