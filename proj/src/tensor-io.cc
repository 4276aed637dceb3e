// src/tensor-io.cc

// Copyright 2026  The FTM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ftm/tensor-io.h"

#include "ftm/binary-io.h"
#include "ftm/error.h"

namespace ftm {

namespace {
constexpr char kWeightMagic[] = "FTMW";
constexpr uint32_t kWeightVersion = 1;
constexpr uint32_t kMaxRank = 4;

// Maps a row-major flat index to the column-major storage offset.
int64_t StorageIndex(const std::vector<int> &dims, int64_t row_major) {
  if (dims.size() < 2) return row_major;
  const int64_t rows = dims[0], cols = dims[1];
  const int64_t r = row_major / cols, c = row_major % cols;
  return c * rows + r;
}
}  // namespace

void SaveTensors(const std::filesystem::path &path, const ConstTensorList &tensors) {
  std::ofstream os = OpenForWrite(path);
  WriteMagic(os, kWeightMagic);
  WriteU32(os, kWeightVersion);
  WriteU32(os, static_cast<uint32_t>(tensors.size()));
  for (const auto &t : tensors) {
    if (t.dims.size() > 2) throw Error(ErrorKind::kShape, "rank > 2 not supported: " + t.name);
    WriteString(os, t.name);
    WriteU32(os, static_cast<uint32_t>(t.dims.size()));
    for (int d : t.dims) WriteU32(os, static_cast<uint32_t>(d));
    for (int64_t i = 0; i < t.size(); ++i)
      WriteF32(os, static_cast<float>(t.data[StorageIndex(t.dims, i)]));
  }
  if (!os) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

std::vector<StoredTensor> LoadTensors(const std::filesystem::path &path) {
  std::ifstream is = OpenForRead(path);
  ExpectMagic(is, kWeightMagic);
  const uint32_t version = ReadU32(is);
  if (version != kWeightVersion)
    throw Error(ErrorKind::kFormat, "unsupported weight version " + std::to_string(version));
  const uint32_t count = ReadU32(is);
  std::vector<StoredTensor> out;
  for (uint32_t k = 0; k < count; ++k) {
    StoredTensor t;
    t.name = ReadString(is, 4096);
    const uint32_t rank = ReadU32(is);
    if (rank > kMaxRank) throw Error(ErrorKind::kFormat, "rank " + std::to_string(rank));
    int64_t size = 1;
    for (uint32_t r = 0; r < rank; ++r) {
      const uint32_t d = ReadU32(is);
      if (d == 0 || d > (1u << 24)) throw Error(ErrorKind::kFormat, "bad dim in " + t.name);
      t.dims.push_back(static_cast<int>(d));
      size *= d;
    }
    if (size > (int64_t{1} << 28)) throw Error(ErrorKind::kFormat, "tensor too large: " + t.name);
    t.values.resize(size);
    for (auto &v : t.values) v = ReadF32(is);
    out.push_back(std::move(t));
  }
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorKind::kFormat, "trailing bytes in " + path.string());
  return out;
}

const StoredTensor &FindTensor(const std::vector<StoredTensor> &stored, const std::string &name) {
  for (const auto &t : stored)
    if (t.name == name) return t;
  throw Error(ErrorKind::kFormat, "missing tensor " + name);
}

void AssignTensors(const std::vector<StoredTensor> &stored, const TensorList &dest) {
  if (stored.size() != dest.size())
    throw Error(ErrorKind::kFormat, "expected " + std::to_string(dest.size()) + " tensors, file has " +
                                        std::to_string(stored.size()));
  for (const auto &t : dest) {
    const StoredTensor &s = FindTensor(stored, t.name);
    if (s.dims != t.dims) throw Error(ErrorKind::kFormat, "shape mismatch for " + t.name);
    for (int64_t i = 0; i < t.size(); ++i) t.data[StorageIndex(t.dims, i)] = s.values[i];
  }
}

}  // namespace ftm
