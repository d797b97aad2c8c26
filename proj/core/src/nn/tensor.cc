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

#include "timescope/nn/tensor.h"

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <numeric>

namespace timescope::nn {
namespace {

template <typename T>
using RowMajor = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T>
Eigen::Map<const RowMajor<T>> AsMatrix(const Tensor<T>& w) {
  return Eigen::Map<const RowMajor<T>>(w.data(), w.rows(), w.cols());
}

template <typename T>
Eigen::Map<const Vec<T>> AsVec(std::span<const T> v) {
  return Eigen::Map<const Vec<T>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <typename T>
Eigen::Map<Vec<T>> AsVec(std::span<T> v) {
  return Eigen::Map<Vec<T>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

template <typename T>
Tensor<T>::Tensor(std::vector<int> shape, T fill) : shape_(std::move(shape)) {
  const size_t n = std::accumulate(shape_.begin(), shape_.end(), size_t{1},
                                   std::multiplies<size_t>());
  values_.assign(n, fill);
}

template <typename T>
void Tensor<T>::Fill(T v) {
  std::fill(values_.begin(), values_.end(), v);
}

template <typename T>
bool Tensor<T>::AllFinite() const {
  for (T v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string ShapeString(const std::vector<int>& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

template <typename T>
void MatVec(const Tensor<T>& w, std::span<const T> x, std::span<T> y,
            bool accumulate) {
  if (accumulate) {
    AsVec(y).noalias() += AsMatrix(w) * AsVec(x);
  } else {
    AsVec(y).noalias() = AsMatrix(w) * AsVec(x);
  }
}

template <typename T>
void MatTVecAdd(const Tensor<T>& w, std::span<const T> dy, std::span<T> dx) {
  AsVec(dx).noalias() += AsMatrix(w).transpose() * AsVec(dy);
}

template <typename T>
void AddOuter(std::span<const T> dy, std::span<const T> x, Tensor<T>* dw) {
  Eigen::Map<RowMajor<T>> m(dw->data(), dw->rows(), dw->cols());
  m.noalias() += AsVec(dy) * AsVec(x).transpose();
}

template <typename T>
T Dot(std::span<const T> a, std::span<const T> b) {
  return AsVec(a).dot(AsVec(b));
}

template <typename T>
void Axpy(T a, std::span<const T> x, std::span<T> y) {
  AsVec(y) += a * AsVec(x);
}

#define TIMESCOPE_INSTANTIATE(T)                                              \
  template class Tensor<T>;                                                   \
  template void MatVec<T>(const Tensor<T>&, std::span<const T>, std::span<T>, \
                          bool);                                              \
  template void MatTVecAdd<T>(const Tensor<T>&, std::span<const T>,           \
                              std::span<T>);                                  \
  template void AddOuter<T>(std::span<const T>, std::span<const T>,           \
                            Tensor<T>*);                                      \
  template T Dot<T>(std::span<const T>, std::span<const T>);                  \
  template void Axpy<T>(T, std::span<const T>, std::span<T>);

TIMESCOPE_INSTANTIATE(float)
TIMESCOPE_INSTANTIATE(double)

#undef TIMESCOPE_INSTANTIATE

}  // namespace timescope::nn
