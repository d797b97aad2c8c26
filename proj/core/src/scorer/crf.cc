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

#include "timescope/scorer/crf.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "timescope/error.h"

namespace timescope::scorer {
namespace {

double LogSumExp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

template <typename T>
void CheckShapes(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans) {
  const int c = emissions.cols();
  if (emissions.rank() != 2 || trans.rank() != 2 || trans.rows() != c ||
      trans.cols() != c) {
    throw ConfigError("crf: emissions " + nn::ShapeString(emissions.shape()) +
                      " and transitions " + nn::ShapeString(trans.shape()) +
                      " disagree");
  }
}

// alpha[i][c] = log sum over prefixes ending in tag c at position i.
template <typename T>
std::vector<std::vector<double>> Forward(const nn::Tensor<T>& e, const nn::Tensor<T>& tr) {
  const int n = e.rows(), c = e.cols();
  std::vector<std::vector<double>> alpha(n, std::vector<double>(c));
  for (int k = 0; k < c; ++k) alpha[0][k] = e.at(0, k);
  std::vector<double> buf(c);
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k < c; ++k) {
      for (int p = 0; p < c; ++p) buf[p] = alpha[i - 1][p] + tr.at(k, p);
      alpha[i][k] = LogSumExp(buf) + e.at(i, k);
    }
  }
  return alpha;
}

template <typename T>
std::vector<std::vector<double>> Backward(const nn::Tensor<T>& e, const nn::Tensor<T>& tr) {
  const int n = e.rows(), c = e.cols();
  std::vector<std::vector<double>> beta(n, std::vector<double>(c, 0.0));
  std::vector<double> buf(c);
  for (int i = n - 2; i >= 0; --i) {
    for (int p = 0; p < c; ++p) {
      for (int k = 0; k < c; ++k) buf[k] = tr.at(k, p) + e.at(i + 1, k) + beta[i + 1][k];
      beta[i][p] = LogSumExp(buf);
    }
  }
  return beta;
}

}  // namespace

template <typename T>
double CrfSequenceScore(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans,
                        const std::vector<int>& tags) {
  CheckShapes(emissions, trans);
  if (static_cast<int>(tags.size()) != emissions.rows()) {
    throw ConfigError("crf: tag count differs from sequence length");
  }
  double s = 0;
  for (size_t i = 0; i < tags.size(); ++i) {
    s += emissions.at(static_cast<int>(i), tags[i]);
    if (i > 0) s += trans.at(tags[i], tags[i - 1]);
  }
  return s;
}

template <typename T>
double CrfLogPartition(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans) {
  CheckShapes(emissions, trans);
  if (emissions.rows() == 0) return 0.0;
  return LogSumExp(Forward(emissions, trans).back());
}

template <typename T>
double CrfNll(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans,
              const std::vector<int>& tags, T scale, nn::Tensor<T>* d_emissions,
              nn::Tensor<T>* d_trans) {
  const double gold = CrfSequenceScore(emissions, trans, tags);
  const int n = emissions.rows(), c = emissions.cols();
  if (n == 0) return 0.0;
  const auto alpha = Forward(emissions, trans);
  const double log_z = LogSumExp(alpha.back());
  if (d_emissions != nullptr || d_trans != nullptr) {
    const auto beta = Backward(emissions, trans);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < c; ++k) {
        const double marg = std::exp(alpha[i][k] + beta[i][k] - log_z);
        if (d_emissions) d_emissions->at(i, k) += scale * static_cast<T>(marg);
      }
      if (d_emissions) d_emissions->at(i, tags[i]) -= scale;
    }
    if (d_trans) {
      for (int i = 1; i < n; ++i) {
        for (int k = 0; k < c; ++k) {
          for (int p = 0; p < c; ++p) {
            const double pair = std::exp(alpha[i - 1][p] + trans.at(k, p) +
                                         emissions.at(i, k) + beta[i][k] - log_z);
            d_trans->at(k, p) += scale * static_cast<T>(pair);
          }
        }
        d_trans->at(tags[i], tags[i - 1]) -= scale;
      }
    }
  }
  return log_z - gold;
}

template <typename T>
std::vector<int> CrfViterbi(const nn::Tensor<T>& emissions, const nn::Tensor<T>& trans) {
  CheckShapes(emissions, trans);
  const int n = emissions.rows(), c = emissions.cols();
  if (n == 0) return {};
  std::vector<std::vector<double>> best(n, std::vector<double>(c));
  std::vector<std::vector<int>> back(n, std::vector<int>(c, 0));
  for (int k = 0; k < c; ++k) best[0][k] = emissions.at(0, k);
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k < c; ++k) {
      double top = -std::numeric_limits<double>::infinity();
      for (int p = 0; p < c; ++p) {
        const double v = best[i - 1][p] + trans.at(k, p);
        if (v > top) {
          top = v;
          back[i][k] = p;
        }
      }
      best[i][k] = top + emissions.at(i, k);
    }
  }
  std::vector<int> tags(n);
  tags[n - 1] = static_cast<int>(
      std::max_element(best[n - 1].begin(), best[n - 1].end()) - best[n - 1].begin());
  for (int i = n - 1; i > 0; --i) tags[i - 1] = back[i][tags[i]];
  return tags;
}

#define TIMESCOPE_INSTANTIATE(T)                                                  \
  template double CrfSequenceScore<T>(const nn::Tensor<T>&, const nn::Tensor<T>&, \
                                      const std::vector<int>&);                   \
  template double CrfLogPartition<T>(const nn::Tensor<T>&, const nn::Tensor<T>&); \
  template double CrfNll<T>(const nn::Tensor<T>&, const nn::Tensor<T>&,           \
                            const std::vector<int>&, T, nn::Tensor<T>*,           \
                            nn::Tensor<T>*);                                      \
  template std::vector<int> CrfViterbi<T>(const nn::Tensor<T>&, const nn::Tensor<T>&);

TIMESCOPE_INSTANTIATE(float)
TIMESCOPE_INSTANTIATE(double)

#undef TIMESCOPE_INSTANTIATE

}  // namespace timescope::scorer
