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

#include "src/io.h"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "src/status.h"

namespace pdpc {
namespace {

constexpr char kStatsMagic[8] = {'P', 'D', 'P', 'C', 'S', 'T', '0', '1'};
constexpr char kMatrixMagic[8] = {'P', 'D', 'P', 'C', 'H', 'M', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

template <typename T>
void PutLe(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T GetLe(std::istream& in, const char* what) {
  T value{};
  const std::streamoff offset = in.tellg();
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  Check(in.gcount() == static_cast<std::streamsize>(sizeof(T)), ErrorCode::kFormat,
        std::string("truncated file: ") + what + " at byte offset " +
            std::to_string(offset));
  return value;
}

void PutMatrix(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) PutLe<double>(out, m(i, j));
  }
}

void GetMatrix(std::istream& in, Matrix& m, const char* what) {
  const std::streamoff offset = in.tellg();
  std::vector<double> buf(static_cast<size_t>(m.size()));
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(double)));
  Check(in.gcount() == static_cast<std::streamsize>(buf.size() * sizeof(double)),
        ErrorCode::kFormat,
        std::string("truncated file: ") + what + " starting at byte offset " +
            std::to_string(offset));
  m = Eigen::Map<const Matrix>(buf.data(), m.rows(), m.cols());
}

void ExpectMagic(std::istream& in, const char (&magic)[8], const char* format) {
  char buf[8] = {};
  in.read(buf, 8);
  Check(in.gcount() == 8 && std::memcmp(buf, magic, 8) == 0, ErrorCode::kFormat,
        std::string("not a ") + format + " file (expected magic " +
            std::string(magic, 8) + ")");
}

bool AtEnd(std::istream& in) {
  return in.peek() == std::char_traits<char>::eof();
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Check(in.good(), ErrorCode::kIo, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Check(out.good(), ErrorCode::kIo, "cannot create " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  Check(out.good(), ErrorCode::kIo, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Images

GrayImage ParsePgm(const std::string& bytes) {
  size_t pos = 0;
  auto fail = [&](const std::string& what) {
    Fail(ErrorCode::kFormat, "PGM: " + what + " at byte offset " + std::to_string(pos));
  };
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&] {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      fail("expected a decimal number");
    }
    long value = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + (bytes[pos++] - '0');
      if (value > 1 << 24) fail("number too large");
    }
    return static_cast<int>(value);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') fail("missing P5 magic");
  pos = 2;
  const int width = number();
  const int height = number();
  const int maxval = number();
  if (width <= 0 || height <= 0) fail("zero image dimension");
  if (maxval != 255 && maxval != 1023) {
    fail("unsupported maxval " + std::to_string(maxval));
  }
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    fail("expected whitespace after maxval");
  }
  ++pos;

  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  const size_t count = static_cast<size_t>(width) * height;
  const size_t need = count * bytes_per_sample;
  if (bytes.size() - pos < need) {
    pos += bytes.size() - pos;
    fail("truncated sample data (need " + std::to_string(need) + " bytes)");
  }
  std::vector<uint16_t> samples(count);
  for (size_t i = 0; i < count; ++i) {
    const size_t at = pos + i * bytes_per_sample;
    uint16_t s = static_cast<uint8_t>(bytes[at]);
    if (bytes_per_sample == 2) s = static_cast<uint16_t>((s << 8) | static_cast<uint8_t>(bytes[at + 1]));
    if (s > maxval) {
      pos = at;
      fail("sample exceeds maxval");
    }
    samples[i] = s;
  }
  return GrayImage::Create(width, height, maxval > 255 ? 10 : 8, std::move(samples));
}

GrayImage LoadPgm(const std::string& path) { return ParsePgm(ReadFile(path)); }

void SavePgm(const std::string& path, const GrayImage& image) {
  const int maxval = MaxSampleValue(image.bit_depth);
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n" + std::to_string(maxval) + "\n";
  for (uint16_t s : image.samples) {
    if (maxval > 255) out.push_back(static_cast<char>(s >> 8));
    out.push_back(static_cast<char>(s & 0xff));
  }
  WriteFile(path, out);
}

std::string EncodePgm8(int width, int height, const std::vector<uint8_t>& pixels) {
  std::string out =
      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(pixels.begin(), pixels.end());
  return out;
}

GrayImage LoadYuv(const std::string& path, int width, int height, int bit_depth,
                  int frame_index) {
  Check(width > 0 && height > 0 && frame_index >= 0, ErrorCode::kInvalidArgument,
        "bad YUV geometry");
  Check(bit_depth == 8 || bit_depth == 10, ErrorCode::kInvalidArgument,
        "YUV bit depth must be 8 or 10");
  const size_t bps = bit_depth > 8 ? 2 : 1;
  const size_t luma = static_cast<size_t>(width) * height;
  const size_t chroma = static_cast<size_t>((width + 1) / 2) * ((height + 1) / 2);
  const size_t frame_size = (luma + 2 * chroma) * bps;
  const std::string bytes = ReadFile(path);
  const size_t expected = (static_cast<size_t>(frame_index) + 1) * frame_size;
  Check(bytes.size() >= expected, ErrorCode::kFormat,
        "YUV file " + path + " holds " + std::to_string(bytes.size()) +
            " bytes, frame " + std::to_string(frame_index) + " needs " +
            std::to_string(expected));
  const size_t base = static_cast<size_t>(frame_index) * frame_size;
  std::vector<uint16_t> samples(luma);
  for (size_t i = 0; i < luma; ++i) {
    const size_t at = base + i * bps;
    uint16_t s = static_cast<uint8_t>(bytes[at]);
    if (bps == 2) s = static_cast<uint16_t>(s | (static_cast<uint8_t>(bytes[at + 1]) << 8));
    samples[i] = s;
  }
  return GrayImage::Create(width, height, bit_depth, std::move(samples));
}

// ---------------------------------------------------------------------------
// Statistics

void WriteStats(std::ostream& out, const StatsTable& stats) {
  out.write(kStatsMagic, 8);
  for (const auto& [key, s] : stats.entries()) {
    PutLe<uint32_t>(out, static_cast<uint32_t>(s.size.n()));
    PutLe<uint32_t>(out, static_cast<uint32_t>(s.mode.index()));
    PutLe<uint64_t>(out, s.count);
    PutMatrix(out, s.p);
    PutMatrix(out, s.q);
  }
}

StatsTable ReadStats(std::istream& in) {
  ExpectMagic(in, kStatsMagic, "PDPCST01 statistics");
  StatsTable table;
  while (!AtEnd(in)) {
    const std::streamoff offset = in.tellg();
    const uint32_t n = GetLe<uint32_t>(in, "block size");
    const uint32_t mode = GetLe<uint32_t>(in, "mode");
    const uint64_t count = GetLe<uint64_t>(in, "count");
    Check(BlockSize::IsValid(static_cast<int>(n)) && mode < kNumModes, ErrorCode::kFormat,
          "invalid (N, mode) = (" + std::to_string(n) + ", " + std::to_string(mode) +
              ") at byte offset " + std::to_string(offset));
    const BlockSize size = BlockSize::Of(static_cast<int>(n));
    const PredictionMode m = PredictionMode::Of(static_cast<int>(mode));
    Check(table.Find(size, m) == nullptr, ErrorCode::kFormat,
          "duplicate record at byte offset " + std::to_string(offset));
    ModeStats& s = table.At(size, m);
    s.count = count;
    GetMatrix(in, s.p, "P matrix");
    GetMatrix(in, s.q, "Q matrix");
  }
  return table;
}

void SaveStats(const std::string& path, const StatsTable& stats) {
  std::ostringstream out(std::ios::binary);
  WriteStats(out, stats);
  WriteFile(path, out.str());
}

StatsTable LoadStats(const std::string& path) {
  std::istringstream in(ReadFile(path), std::ios::binary);
  return ReadStats(in);
}

// ---------------------------------------------------------------------------
// Matrices

void WriteMatrices(std::ostream& out, const std::vector<PredictorMatrix>& matrices) {
  out.write(kMatrixMagic, 8);
  for (const PredictorMatrix& h : matrices) {
    PutLe<uint32_t>(out, static_cast<uint32_t>(h.mode.index()));
    PutLe<uint32_t>(out, static_cast<uint32_t>(h.size.n()));
    PutLe<uint8_t>(out, static_cast<uint8_t>(h.kind));
    PutMatrix(out, h.entries);
  }
}

std::vector<PredictorMatrix> ReadMatrices(std::istream& in) {
  ExpectMagic(in, kMatrixMagic, "PDPCHM01 matrix");
  std::vector<PredictorMatrix> out;
  while (!AtEnd(in)) {
    const std::streamoff offset = in.tellg();
    const uint32_t mode = GetLe<uint32_t>(in, "mode");
    const uint32_t n = GetLe<uint32_t>(in, "block size");
    const uint8_t kind = GetLe<uint8_t>(in, "kind");
    Check(BlockSize::IsValid(static_cast<int>(n)) && mode < kNumModes && kind <= 2,
          ErrorCode::kFormat,
          "invalid matrix header at byte offset " + std::to_string(offset));
    PredictorMatrix h(BlockSize::Of(static_cast<int>(n)),
                      PredictionMode::Of(static_cast<int>(mode)),
                      static_cast<MatrixKind>(kind));
    GetMatrix(in, h.entries, "matrix entries");
    out.push_back(std::move(h));
  }
  return out;
}

void SaveMatrices(const std::string& path, const std::vector<PredictorMatrix>& matrices) {
  std::ostringstream out(std::ios::binary);
  WriteMatrices(out, matrices);
  WriteFile(path, out.str());
}

std::vector<PredictorMatrix> LoadMatrices(const std::string& path) {
  std::istringstream in(ReadFile(path), std::ios::binary);
  return ReadMatrices(in);
}

// ---------------------------------------------------------------------------
// Parameters

namespace {

using nlohmann::json;

int Numerator(double value, const char* field) {
  const double scaled = value * kParamDenominator;
  Check(scaled == std::round(scaled), ErrorCode::kInvalidArgument,
        std::string(field) + " = " + std::to_string(value) + " is not a multiple of 1/32");
  return static_cast<int>(scaled);
}

template <typename T>
T Field(const json& j, const char* key) {
  Check(j.contains(key), ErrorCode::kFormat, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string ParamsToJson(const ParamLibrary& library) {
  json doc;
  doc["version"] = 1;
  doc["denominator"] = kParamDenominator;
  doc["num_sets"] = library.num_sets();
  doc["mode_groups"] = library.groups().lists();
  json entries = json::array();
  for (BlockSize size : library.Sizes()) {
    for (int g = 0; g < library.groups().num_groups(); ++g) {
      entries.push_back({{"N", size.n()}, {"group", g}, {"set", 0}, {"identity", true}});
      for (int s = 1; s < library.num_sets(); ++s) {
        const auto it = library.entries().find({size.n(), g, s});
        if (it == library.entries().end()) continue;
        const PdpcParams& p = it->second;
        entries.push_back({{"N", size.n()},
                           {"group", g},
                           {"set", s},
                           {"c1v", Numerator(p.c1v, "c1v")},
                           {"c2v", Numerator(p.c2v, "c2v")},
                           {"c1h", Numerator(p.c1h, "c1h")},
                           {"c2h", Numerator(p.c2h, "c2h")},
                           {"dv", p.dv},
                           {"dh", p.dh},
                           {"a", Numerator(p.a, "a")},
                           {"k", p.k}});
      }
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

ParamLibrary ParamsFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kFormat, std::string("params JSON: ") + e.what());
  }
  Check(doc.is_object(), ErrorCode::kFormat, "params JSON must be an object");
  const int version = Field<int>(doc, "version");
  Check(version == 1, ErrorCode::kFormat,
        "unsupported params version " + std::to_string(version));
  const int denominator = Field<int>(doc, "denominator");
  Check(denominator == kParamDenominator, ErrorCode::kFormat,
        "params denominator must be 32");
  const int num_sets = Field<int>(doc, "num_sets");
  Check(num_sets >= 1 && num_sets <= 4, ErrorCode::kFormat, "num_sets outside [1, 4]");
  ParamLibrary library(num_sets,
                       ModeGroups::FromLists(Field<std::vector<std::vector<int>>>(doc, "mode_groups")));
  const json entries = Field<json>(doc, "entries");
  Check(entries.is_array(), ErrorCode::kFormat, "'entries' must be an array");
  for (const json& e : entries) {
    const int n = Field<int>(e, "N");
    Check(BlockSize::IsValid(n), ErrorCode::kFormat, "entry with invalid N");
    const int group = Field<int>(e, "group");
    const int set = Field<int>(e, "set");
    Check(group >= 0 && group < library.groups().num_groups() && set >= 0 &&
              set < num_sets,
          ErrorCode::kFormat, "entry (group, set) out of range");
    if (set == 0) {
      Check(e.value("identity", false), ErrorCode::kFormat,
            "set 0 must be the identity entry");
      continue;
    }
    PdpcParams p;
    p.c1v = static_cast<double>(Field<int>(e, "c1v")) / kParamDenominator;
    p.c2v = static_cast<double>(Field<int>(e, "c2v")) / kParamDenominator;
    p.c1h = static_cast<double>(Field<int>(e, "c1h")) / kParamDenominator;
    p.c2h = static_cast<double>(Field<int>(e, "c2h")) / kParamDenominator;
    p.dv = Field<int>(e, "dv");
    p.dh = Field<int>(e, "dh");
    p.a = static_cast<double>(Field<int>(e, "a")) / kParamDenominator;
    p.k = Field<int>(e, "k");
    try {
      library.Put(BlockSize::Of(n), group, set, p);
    } catch (const Error& err) {
      Fail(ErrorCode::kFormat, std::string("invalid entry: ") + err.what());
    }
  }
  return library;
}

void SaveParams(const std::string& path, const ParamLibrary& library) {
  WriteFile(path, ParamsToJson(library));
}

ParamLibrary LoadParams(const std::string& path) { return ParamsFromJson(ReadFile(path)); }

}  // namespace pdpc
