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

#ifndef TIMESCOPE_NN_PARAM_SET_H_
#define TIMESCOPE_NN_PARAM_SET_H_

#include <map>
#include <string>
#include <vector>

#include "timescope/error.h"
#include "timescope/nn/tensor.h"

namespace timescope::nn {

// Named tensors in insertion order. The order is the container directory
// order and the iteration order of the optimizer and gradient checker.
template <typename T>
class ParamSet {
 public:
  Tensor<T>& Add(const std::string& name, std::vector<int> shape) {
    if (index_.count(name)) throw ConfigError("duplicate parameter '" + name + "'");
    index_[name] = tensors_.size();
    names_.push_back(name);
    tensors_.emplace_back(std::move(shape));
    return tensors_.back();
  }

  bool Has(const std::string& name) const { return index_.count(name) > 0; }

  Tensor<T>& operator[](const std::string& name) { return tensors_[IndexOf(name)]; }
  const Tensor<T>& operator[](const std::string& name) const {
    return tensors_[IndexOf(name)];
  }

  size_t size() const { return tensors_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  Tensor<T>& tensor(size_t i) { return tensors_[i]; }
  const Tensor<T>& tensor(size_t i) const { return tensors_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  size_t NumValues() const {
    size_t n = 0;
    for (const auto& t : tensors_) n += t.size();
    return n;
  }

  ParamSet ZerosLike() const {
    ParamSet out;
    for (size_t i = 0; i < size(); ++i) out.Add(names_[i], tensors_[i].shape());
    return out;
  }

  void SetZero() {
    for (auto& t : tensors_) t.Fill(T(0));
  }

  template <typename U>
  ParamSet<U> Cast() const {
    ParamSet<U> out;
    for (size_t i = 0; i < size(); ++i) {
      out.Add(names_[i], tensors_[i].shape()) = tensors_[i].template Cast<U>();
    }
    return out;
  }

  bool operator==(const ParamSet& o) const {
    return names_ == o.names_ && tensors_ == o.tensors_;
  }

 private:
  size_t IndexOf(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown parameter '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names_;
  std::vector<Tensor<T>> tensors_;
  std::map<std::string, size_t> index_;
};

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_PARAM_SET_H_
