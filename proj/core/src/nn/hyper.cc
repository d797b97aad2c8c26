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

#include "timescope/nn/hyper.h"

#include <cstdio>
#include <stdexcept>

#include "timescope/error.h"

namespace timescope::nn {
namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void Hyper::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("hyper: ") + what);
  };
  require(char_emb_dim > 0 && char_filters > 0 && word_emb_dim > 0 &&
              rnn_hidden > 0,
          "dimensions must be positive");
  require(conv_width > 0 && conv_width % 2 == 1, "conv_width must be odd");
  require(email_rnn_layers >= 1, "email_rnn_layers must be >= 1");
  require(dropout >= 0.0 && dropout < 1.0, "dropout must be in [0, 1)");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0, 1]");
  require(epochs >= 1 && patience >= 1, "epochs and patience must be >= 1");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(grad_clip >= 0.0, "grad_clip must be >= 0");
  require(min_word_count >= 1, "min_word_count must be >= 1");
}

std::map<std::string, std::string> Hyper::ToMap() const {
  return {
      {"char_emb_dim", std::to_string(char_emb_dim)},
      {"char_filters", std::to_string(char_filters)},
      {"conv_width", std::to_string(conv_width)},
      {"word_emb_dim", std::to_string(word_emb_dim)},
      {"rnn_hidden", std::to_string(rnn_hidden)},
      {"email_rnn_layers", std::to_string(email_rnn_layers)},
      {"dropout", FormatDouble(dropout)},
      {"gamma", FormatDouble(gamma)},
      {"epochs", std::to_string(epochs)},
      {"patience", std::to_string(patience)},
      {"learning_rate", FormatDouble(learning_rate)},
      {"grad_clip", FormatDouble(grad_clip)},
      {"min_word_count", std::to_string(min_word_count)},
      {"seed", std::to_string(seed)},
  };
}

bool Hyper::Set(const std::string& key, const std::string& value) {
  try {
    if (key == "char_emb_dim") char_emb_dim = std::stoi(value);
    else if (key == "char_filters") char_filters = std::stoi(value);
    else if (key == "conv_width") conv_width = std::stoi(value);
    else if (key == "word_emb_dim") word_emb_dim = std::stoi(value);
    else if (key == "rnn_hidden") rnn_hidden = std::stoi(value);
    else if (key == "email_rnn_layers") email_rnn_layers = std::stoi(value);
    else if (key == "dropout") dropout = std::stod(value);
    else if (key == "gamma") gamma = std::stod(value);
    else if (key == "epochs") epochs = std::stoi(value);
    else if (key == "patience") patience = std::stoi(value);
    else if (key == "learning_rate") learning_rate = std::stod(value);
    else if (key == "grad_clip") grad_clip = std::stod(value);
    else if (key == "min_word_count") min_word_count = std::stoi(value);
    else if (key == "seed") seed = std::stoull(value);
    else return false;
  } catch (const std::logic_error&) {
    throw ConfigError("hyper: bad value '" + value + "' for '" + key + "'");
  }
  return true;
}

Hyper Hyper::FromMap(const std::map<std::string, std::string>& kv) {
  Hyper h;
  for (const auto& [k, v] : kv) h.Set(k, v);
  return h;
}

}  // namespace timescope::nn
