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

#include "timescope/nn/container.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "timescope/error.h"

namespace timescope::nn {
namespace {

using Json = nlohmann::ordered_json;

constexpr char kMagic[8] = {'T', 'S', 'M', 'O', 'D', 'E', 'L', '\0'};
constexpr uint64_t kMaxHeader = 1ull << 30;

template <typename U>
void PutLe(std::ostream& out, U v) {
  char buf[sizeof(U)];
  for (size_t i = 0; i < sizeof(U); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, sizeof(U));
}

template <typename U>
U GetLe(std::istream& in, const char* what) {
  unsigned char buf[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(U))) {
    throw FormatError(std::string("model file truncated in ") + what);
  }
  U v = 0;
  for (size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void WriteContainer(const ModelContainer& model, std::ostream& out) {
  Json header;
  header["format_version"] = kContainerVersion;
  Json hyper = Json::object();
  for (const auto& [k, v] : model.hyper.ToMap()) hyper[k] = v;
  header["hyper"] = hyper;
  header["threshold"] = model.threshold;
  Json tables = Json::object();
  for (const auto& [k, v] : model.string_tables) tables[k] = v;
  header["tables"] = tables;
  Json dir = Json::array();
  for (size_t i = 0; i < model.params.size(); ++i) {
    dir.push_back({{"name", model.params.name(i)},
                   {"shape", model.params.tensor(i).shape()}});
  }
  header["tensors"] = dir;
  const std::string text = header.dump();

  out.write(kMagic, sizeof(kMagic));
  PutLe<uint32_t>(out, kContainerVersion);
  PutLe<uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (size_t i = 0; i < model.params.size(); ++i) {
    for (float f : model.params.tensor(i).values()) {
      PutLe<uint32_t>(out, std::bit_cast<uint32_t>(f));
    }
  }
  if (!out) throw Error("failed writing model");
}

void WriteContainer(const ModelContainer& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  WriteContainer(model, out);
}

ModelContainer ReadContainer(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw FormatError("not a model file (bad magic)");
  }
  const uint32_t version = GetLe<uint32_t>(in, "version");
  if (version != kContainerVersion) {
    throw FormatError("unsupported model format version " + std::to_string(version));
  }
  const uint64_t len = GetLe<uint64_t>(in, "header length");
  if (len > kMaxHeader) throw FormatError("model header too large");
  std::string text(len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(len))) {
    throw FormatError("model file truncated in header");
  }

  ModelContainer model;
  try {
    const Json header = Json::parse(text);
    if (header.at("format_version").get<uint32_t>() != version) {
      throw FormatError("header version disagrees with preamble");
    }
    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : header.at("hyper").items()) kv[k] = v.get<std::string>();
    model.hyper = Hyper::FromMap(kv);
    model.threshold = header.at("threshold").get<double>();
    for (const auto& [k, v] : header.at("tables").items()) {
      model.string_tables[k] = v.get<std::vector<std::string>>();
    }
    for (const auto& entry : header.at("tensors")) {
      auto shape = entry.at("shape").get<std::vector<int>>();
      for (int d : shape) {
        if (d < 0) throw FormatError("negative tensor dimension");
      }
      model.params.Add(entry.at("name").get<std::string>(), std::move(shape));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad model header: ") + e.what());
  }
  for (size_t i = 0; i < model.params.size(); ++i) {
    for (float& f : model.params.tensor(i).values()) {
      f = std::bit_cast<float>(GetLe<uint32_t>(in, model.params.name(i).c_str()));
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after model payload");
  }
  return model;
}

ModelContainer ReadContainer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model '" + path + "'");
  return ReadContainer(in);
}

}  // namespace timescope::nn
