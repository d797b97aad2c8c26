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

#ifndef TIMESCOPE_NN_TENSOR_H_
#define TIMESCOPE_NN_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace timescope::nn {

// Dense row-major tensor. Rank-2 tensors double as matrices and as
// sequences of row vectors.
template <typename T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape, T fill = T(0));

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int k) const { return shape_[k]; }
  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }
  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  T& operator[](size_t i) { return values_[i]; }
  const T& operator[](size_t i) const { return values_[i]; }

  // Rank-2 access.
  int rows() const { return shape_.empty() ? 0 : shape_[0]; }
  int cols() const { return shape_.size() < 2 ? 1 : shape_[1]; }
  T& at(int r, int c) { return values_[static_cast<size_t>(r) * cols() + c]; }
  const T& at(int r, int c) const {
    return values_[static_cast<size_t>(r) * cols() + c];
  }
  std::span<T> row(int r) {
    return std::span<T>(values_).subspan(static_cast<size_t>(r) * cols(), cols());
  }
  std::span<const T> row(int r) const {
    return std::span<const T>(values_).subspan(static_cast<size_t>(r) * cols(),
                                               cols());
  }

  void Fill(T v);
  bool AllFinite() const;

  template <typename U>
  Tensor<U> Cast() const {
    Tensor<U> out(shape_);
    for (size_t i = 0; i < values_.size(); ++i) out[i] = static_cast<U>(values_[i]);
    return out;
  }

  bool operator==(const Tensor&) const = default;

 private:
  std::vector<int> shape_;
  std::vector<T> values_;
};

std::string ShapeString(const std::vector<int>& shape);

// y = W x (or y += W x). W is rows x cols.
template <typename T>
void MatVec(const Tensor<T>& w, std::span<const T> x, std::span<T> y,
            bool accumulate = false);

// dx += W^T dy.
template <typename T>
void MatTVecAdd(const Tensor<T>& w, std::span<const T> dy, std::span<T> dx);

// dW += dy x^T.
template <typename T>
void AddOuter(std::span<const T> dy, std::span<const T> x, Tensor<T>* dw);

template <typename T>
T Dot(std::span<const T> a, std::span<const T> b);

// y += a * x.
template <typename T>
void Axpy(T a, std::span<const T> x, std::span<T> y);

}  // namespace timescope::nn

#endif  // TIMESCOPE_NN_TENSOR_H_
