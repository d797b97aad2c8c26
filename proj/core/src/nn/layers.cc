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

#include "timescope/nn/layers.h"

#include <cmath>

namespace timescope::nn {

template <typename T>
T Sigmoid(T x) {
  if (x >= 0) {
    const T e = std::exp(-x);
    return T(1) / (T(1) + e);
  }
  const T e = std::exp(x);
  return e / (T(1) + e);
}

// --- Character CNN ----------------------------------------------------------

template <typename T>
CharCnnTrace<T> CharCnnForward(const CharCnnParams<T>& p, std::span<const int> ids) {
  const int len = static_cast<int>(ids.size());
  const int dim = p.embedding->cols();
  const int num_filters = p.filters->rows();
  const int half = p.width / 2;

  CharCnnTrace<T> tr;
  tr.ids.assign(ids.begin(), ids.end());
  tr.windows = Tensor<T>({len, p.width * dim});
  for (int t = 0; t < len; ++t) {
    auto window = tr.windows.row(t);
    for (int k = 0; k < p.width; ++k) {
      const int src = t + k - half;
      if (src < 0 || src >= len) continue;
      auto emb = p.embedding->row(ids[src]);
      std::copy(emb.begin(), emb.end(), window.begin() + k * dim);
    }
  }
  tr.argmax.assign(num_filters, 0);
  tr.max_pre.assign(num_filters, T(0));
  tr.output.assign(num_filters, T(0));
  std::vector<T> conv(num_filters);
  for (int t = 0; t < len; ++t) {
    std::copy(p.bias->values().begin(), p.bias->values().end(), conv.begin());
    MatVec<T>(*p.filters, tr.windows.row(t), conv, /*accumulate=*/true);
    for (int f = 0; f < num_filters; ++f) {
      if (t == 0 || conv[f] > tr.max_pre[f]) {
        tr.max_pre[f] = conv[f];
        tr.argmax[f] = t;
      }
    }
  }
  for (int f = 0; f < num_filters; ++f) {
    tr.output[f] = tr.max_pre[f] > 0 ? tr.max_pre[f] : T(0);
  }
  return tr;
}

template <typename T>
void CharCnnBackward(const CharCnnParams<T>& p, const CharCnnTrace<T>& tr,
                     std::span<const T> d_output, const CharCnnGrads<T>& g) {
  const int len = static_cast<int>(tr.ids.size());
  const int dim = p.embedding->cols();
  const int num_filters = p.filters->rows();
  const int half = p.width / 2;
  Tensor<T> d_windows({len, p.width * dim});
  for (int f = 0; f < num_filters; ++f) {
    if (tr.max_pre[f] <= 0 || d_output[f] == 0) continue;
    const int t = tr.argmax[f];
    const T d = d_output[f];
    (*g.bias)[f] += d;
    Axpy<T>(d, tr.windows.row(t), g.filters->row(f));
    Axpy<T>(d, p.filters->row(f), d_windows.row(t));
  }
  for (int t = 0; t < len; ++t) {
    auto dw = d_windows.row(t);
    for (int k = 0; k < p.width; ++k) {
      const int src = t + k - half;
      if (src < 0 || src >= len) continue;
      auto de = g.embedding->row(tr.ids[src]);
      for (int j = 0; j < dim; ++j) de[j] += dw[k * dim + j];
    }
  }
}

// --- GRU --------------------------------------------------------------------

template <typename T>
GruParams<T> GruParamsFrom(const ParamSet<T>& params, const std::string& prefix) {
  return {&params[prefix + ".W"], &params[prefix + ".U"], &params[prefix + ".b"]};
}

template <typename T>
GruGrads<T> GruGradsFrom(ParamSet<T>* grads, const std::string& prefix) {
  return {&(*grads)[prefix + ".W"], &(*grads)[prefix + ".U"],
          &(*grads)[prefix + ".b"]};
}

template <typename T>
void AddGruParams(ParamSet<T>* params, const std::string& prefix, int input,
                  int hidden) {
  params->Add(prefix + ".W", {3 * hidden, input});
  params->Add(prefix + ".U", {3 * hidden, hidden});
  params->Add(prefix + ".b", {3 * hidden});
}

template <typename T>
GruTrace<T> GruForward(const GruParams<T>& p, const Tensor<T>& inputs,
                       bool reverse) {
  const int n = inputs.rows();
  const int h = p.hidden();
  GruTrace<T> tr;
  tr.reverse = reverse;
  tr.inputs = inputs;
  tr.states = Tensor<T>({n + 1, h});
  tr.reset = Tensor<T>({n, h});
  tr.update = Tensor<T>({n, h});
  tr.cand = Tensor<T>({n, h});
  tr.reset_h = Tensor<T>({n, h});

  std::vector<T> wx(3 * h), uh(3 * h), un(h);
  const auto& b = p.b->values();
  for (int k = 0; k < n; ++k) {
    const int pos = reverse ? n - 1 - k : k;
    auto prev = tr.states.row(k);
    MatVec<T>(*p.w, inputs.row(pos), wx);
    MatVec<T>(*p.u, prev, uh);
    auto r = tr.reset.row(k);
    auto z = tr.update.row(k);
    auto c = tr.cand.row(k);
    auto rh = tr.reset_h.row(k);
    for (int j = 0; j < h; ++j) {
      r[j] = Sigmoid<T>(wx[j] + uh[j] + b[j]);
      z[j] = Sigmoid<T>(wx[h + j] + uh[h + j] + b[h + j]);
      rh[j] = r[j] * prev[j];
    }
    // U_n (r * h): rows 2H..3H of U.
    for (int j = 0; j < h; ++j) {
      un[j] = Dot<T>(p.u->row(2 * h + j), rh);
    }
    auto next = tr.states.row(k + 1);
    for (int j = 0; j < h; ++j) {
      c[j] = std::tanh(wx[2 * h + j] + un[j] + b[2 * h + j]);
      next[j] = (T(1) - z[j]) * c[j] + z[j] * prev[j];
    }
  }
  return tr;
}

template <typename T>
void GruBackward(const GruParams<T>& p, const GruTrace<T>& tr,
                 const Tensor<T>& d_outputs, const GruGrads<T>& g,
                 Tensor<T>* d_inputs) {
  const int n = tr.length();
  const int h = p.hidden();
  std::vector<T> dh(h, T(0));      // gradient flowing into states[k + 1]
  std::vector<T> da(3 * h);        // pre-activation grads [r; z; n]
  std::vector<T> d_rh(h), d_prev(h);
  for (int k = n - 1; k >= 0; --k) {
    const int pos = tr.reverse ? n - 1 - k : k;
    auto dout = d_outputs.row(pos);
    for (int j = 0; j < h; ++j) dh[j] += dout[j];

    auto prev = tr.states.row(k);
    auto r = tr.reset.row(k);
    auto z = tr.update.row(k);
    auto c = tr.cand.row(k);
    auto rh = tr.reset_h.row(k);

    for (int j = 0; j < h; ++j) {
      const T dc = dh[j] * (T(1) - z[j]);
      const T dz = dh[j] * (prev[j] - c[j]);
      d_prev[j] = dh[j] * z[j];
      da[2 * h + j] = dc * (T(1) - c[j] * c[j]);
      da[h + j] = dz * z[j] * (T(1) - z[j]);
    }
    // Candidate path through U_n (r * h).
    std::fill(d_rh.begin(), d_rh.end(), T(0));
    for (int j = 0; j < h; ++j) {
      const T d = da[2 * h + j];
      if (d == 0) continue;
      Axpy<T>(d, p.u->row(2 * h + j), d_rh);
      Axpy<T>(d, rh, g.u->row(2 * h + j));
    }
    for (int j = 0; j < h; ++j) {
      da[j] = d_rh[j] * prev[j] * r[j] * (T(1) - r[j]);
      d_prev[j] += d_rh[j] * r[j];
    }
    // Input weights and bias for all three gates.
    AddOuter<T>(da, tr.inputs.row(pos), g.w);
    for (int j = 0; j < 3 * h; ++j) (*g.b)[j] += da[j];
    if (d_inputs != nullptr) MatTVecAdd<T>(*p.w, da, d_inputs->row(pos));
    // Recurrent weights for reset and update gates.
    std::span<const T> da_rz(da.data(), 2 * h);
    for (int j = 0; j < 2 * h; ++j) {
      if (da_rz[j] == 0) continue;
      Axpy<T>(da_rz[j], prev, g.u->row(j));
      Axpy<T>(da_rz[j], p.u->row(j), d_prev);
    }
    dh = d_prev;
  }
}

// --- Bidirectional GRU ------------------------------------------------------

template <typename T>
BiGruParams<T> BiGruParamsFrom(const ParamSet<T>& params, const std::string& prefix) {
  return {GruParamsFrom(params, prefix + ".fwd"),
          GruParamsFrom(params, prefix + ".bwd")};
}

template <typename T>
BiGruGrads<T> BiGruGradsFrom(ParamSet<T>* grads, const std::string& prefix) {
  return {GruGradsFrom(grads, prefix + ".fwd"), GruGradsFrom(grads, prefix + ".bwd")};
}

template <typename T>
void AddBiGruParams(ParamSet<T>* params, const std::string& prefix, int input,
                    int hidden) {
  AddGruParams(params, prefix + ".fwd", input, hidden);
  AddGruParams(params, prefix + ".bwd", input, hidden);
}

template <typename T>
BiGruTrace<T> BiGruForward(const BiGruParams<T>& p, const Tensor<T>& inputs) {
  return {GruForward(p.fwd, inputs, false), GruForward(p.bwd, inputs, true)};
}

template <typename T>
Tensor<T> BiGruAllStates(const BiGruTrace<T>& tr) {
  const int n = tr.fwd.length();
  const int h = tr.fwd.states.cols();
  Tensor<T> out({n, 2 * h});
  for (int pos = 0; pos < n; ++pos) {
    auto row = out.row(pos);
    auto f = tr.fwd.OutputAt(pos);
    auto b = tr.bwd.OutputAt(pos);
    std::copy(f.begin(), f.end(), row.begin());
    std::copy(b.begin(), b.end(), row.begin() + h);
  }
  return out;
}

template <typename T>
std::vector<T> BiGruFinalStates(const BiGruTrace<T>& tr) {
  const int n = tr.fwd.length();
  const int h = tr.fwd.states.cols();
  std::vector<T> out(2 * h);
  auto f = tr.fwd.OutputAt(n - 1);
  auto b = tr.bwd.OutputAt(0);
  std::copy(f.begin(), f.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + h);
  return out;
}

template <typename T>
void BiGruBackwardAll(const BiGruParams<T>& p, const BiGruTrace<T>& tr,
                      const Tensor<T>& d_states, const BiGruGrads<T>& g,
                      Tensor<T>* d_inputs) {
  const int n = tr.fwd.length();
  const int h = tr.fwd.states.cols();
  Tensor<T> df({n, h}), db({n, h});
  for (int pos = 0; pos < n; ++pos) {
    auto src = d_states.row(pos);
    std::copy(src.begin(), src.begin() + h, df.row(pos).begin());
    std::copy(src.begin() + h, src.end(), db.row(pos).begin());
  }
  GruBackward(p.fwd, tr.fwd, df, g.fwd, d_inputs);
  GruBackward(p.bwd, tr.bwd, db, g.bwd, d_inputs);
}

template <typename T>
void BiGruBackwardFinal(const BiGruParams<T>& p, const BiGruTrace<T>& tr,
                        std::span<const T> d_final, const BiGruGrads<T>& g,
                        Tensor<T>* d_inputs) {
  const int n = tr.fwd.length();
  const int h = tr.fwd.states.cols();
  Tensor<T> df({n, h}), db({n, h});
  std::copy(d_final.begin(), d_final.begin() + h, df.row(n - 1).begin());
  std::copy(d_final.begin() + h, d_final.end(), db.row(0).begin());
  GruBackward(p.fwd, tr.fwd, df, g.fwd, d_inputs);
  GruBackward(p.bwd, tr.bwd, db, g.bwd, d_inputs);
}

// --- Dropout / init -----------------------------------------------------------

template <typename T>
Tensor<T> DropoutMask(const std::vector<int>& shape, double rate, Rng* rng) {
  Tensor<T> mask(shape, T(1));
  if (rate <= 0) return mask;
  const T keep = static_cast<T>(1.0 / (1.0 - rate));
  for (size_t i = 0; i < mask.size(); ++i) {
    mask[i] = rng->Uniform() < rate ? T(0) : keep;
  }
  return mask;
}

namespace {

bool IsBiasName(const std::string& name) {
  auto ends = [&](const char* suffix) {
    const std::string s(suffix);
    return name.size() >= s.size() &&
           name.compare(name.size() - s.size(), s.size(), s) == 0;
  };
  return ends(".b") || ends("_b") || ends("_q") || ends("_d") || ends("_g");
}

}  // namespace

template <typename T>
void GlorotInit(ParamSet<T>* params, Rng* rng) {
  for (size_t i = 0; i < params->size(); ++i) {
    const std::string& name = params->name(i);
    Tensor<T>& t = params->tensor(i);
    if (IsBiasName(name)) {
      t.Fill(T(0));
      continue;
    }
    double limit;
    if (name.find("lookup") != std::string::npos) {
      limit = std::sqrt(3.0 / t.cols());
    } else if (t.rank() == 1) {
      limit = std::sqrt(6.0 / (t.size() + 1));
    } else {
      limit = std::sqrt(6.0 / (t.rows() + t.cols()));
    }
    for (size_t k = 0; k < t.size(); ++k) {
      t[k] = static_cast<T>(rng->Uniform(-limit, limit));
    }
  }
}

#define TIMESCOPE_INSTANTIATE(T)                                                \
  template T Sigmoid<T>(T);                                                     \
  template CharCnnTrace<T> CharCnnForward<T>(const CharCnnParams<T>&,           \
                                             std::span<const int>);             \
  template void CharCnnBackward<T>(const CharCnnParams<T>&,                     \
                                   const CharCnnTrace<T>&, std::span<const T>,  \
                                   const CharCnnGrads<T>&);                     \
  template GruParams<T> GruParamsFrom<T>(const ParamSet<T>&, const std::string&); \
  template GruGrads<T> GruGradsFrom<T>(ParamSet<T>*, const std::string&);       \
  template void AddGruParams<T>(ParamSet<T>*, const std::string&, int, int);    \
  template GruTrace<T> GruForward<T>(const GruParams<T>&, const Tensor<T>&,     \
                                     bool);                                     \
  template void GruBackward<T>(const GruParams<T>&, const GruTrace<T>&,         \
                               const Tensor<T>&, const GruGrads<T>&,            \
                               Tensor<T>*);                                     \
  template BiGruParams<T> BiGruParamsFrom<T>(const ParamSet<T>&,                \
                                             const std::string&);               \
  template BiGruGrads<T> BiGruGradsFrom<T>(ParamSet<T>*, const std::string&);   \
  template void AddBiGruParams<T>(ParamSet<T>*, const std::string&, int, int);  \
  template BiGruTrace<T> BiGruForward<T>(const BiGruParams<T>&,                 \
                                         const Tensor<T>&);                     \
  template Tensor<T> BiGruAllStates<T>(const BiGruTrace<T>&);                   \
  template std::vector<T> BiGruFinalStates<T>(const BiGruTrace<T>&);            \
  template void BiGruBackwardAll<T>(const BiGruParams<T>&, const BiGruTrace<T>&, \
                                    const Tensor<T>&, const BiGruGrads<T>&,     \
                                    Tensor<T>*);                                \
  template void BiGruBackwardFinal<T>(const BiGruParams<T>&,                    \
                                      const BiGruTrace<T>&, std::span<const T>, \
                                      const BiGruGrads<T>&, Tensor<T>*);        \
  template Tensor<T> DropoutMask<T>(const std::vector<int>&, double, Rng*);     \
  template void GlorotInit<T>(ParamSet<T>*, Rng*);

TIMESCOPE_INSTANTIATE(float)
TIMESCOPE_INSTANTIATE(double)

#undef TIMESCOPE_INSTANTIATE

}  // namespace timescope::nn
