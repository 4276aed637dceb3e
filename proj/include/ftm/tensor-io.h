// include/ftm/tensor-io.h

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

#ifndef FTM_TENSOR_IO_H_
#define FTM_TENSOR_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "ftm/nnet-common.h"

namespace ftm {

// Weight file ("FTMW"):
//   magic "FTMW" | version u32 | tensor count u32 |
//   per tensor: name length u32, UTF-8 name, rank u32, dims u32 x rank,
//               prod(dims) float32 values in row-major order.
// All integers and floats are little-endian.

struct StoredTensor {
  std::string name;
  std::vector<int> dims;
  std::vector<float> values;  // row-major
};

void SaveTensors(const std::filesystem::path &path, const ConstTensorList &tensors);
std::vector<StoredTensor> LoadTensors(const std::filesystem::path &path);

// Returns the stored tensor with this name or throws kFormat.
const StoredTensor &FindTensor(const std::vector<StoredTensor> &stored, const std::string &name);

/// Copies stored values into model storage by name; every destination tensor
/// must be present with identical dims, and no extra tensors are allowed.
void AssignTensors(const std::vector<StoredTensor> &stored, const TensorList &dest);

}  // namespace ftm

#endif  // FTM_TENSOR_IO_H_
