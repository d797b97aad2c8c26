// Copyright 2026 The Timescope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TIMESCOPE_NN_CONTAINER_H_
#define TIMESCOPE_NN_CONTAINER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "timescope/nn/hyper.h"
#include "timescope/nn/param_set.h"

namespace timescope::nn {

inline constexpr uint32_t kContainerVersion = 1;

// Model file layout:
//   8 bytes   magic "TSMODEL\0"
//   uint32    format version (little endian)
//   uint64    header length in bytes (little endian)
//   header    JSON: format_version, hyper, threshold, string tables,
//             tensor directory [{name, shape}]
//   payload   float32 little endian, tensors in directory order
struct ModelContainer {
  Hyper hyper;
  double threshold = 0.5;
  std::map<std::string, std::vector<std::string>> string_tables;
  ParamSet<float> params;

  bool operator==(const ModelContainer&) const = default;
};

void WriteContainer(const ModelContainer& model, std::ostream& out);
void WriteContainer(const ModelContainer& model, const std::string& path);

// Throws FormatError on bad magic, version, truncation or shape mismatch.
ModelContainer ReadContainer(std::istream& in);
ModelContainer ReadContainer(const std::string& path);

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_CONTAINER_H_
