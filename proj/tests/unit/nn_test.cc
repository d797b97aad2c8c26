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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "timescope/error.h"
#include "timescope/nn/adam.h"
#include "timescope/nn/container.h"
#include "timescope/nn/grad_check.h"
#include "timescope/nn/hyper.h"
#include "timescope/nn/layers.h"
#include "timescope/nn/model_params.h"
#include "timescope/nn/param_set.h"
#include "timescope/nn/tensor.h"
#include "timescope/rng.h"

namespace timescope::nn {
namespace {

Tensor<double> RandomTensor(std::vector<int> shape, Rng* rng, double scale = 0.5) {
  Tensor<double> t(std::move(shape));
  for (size_t i = 0; i < t.size(); ++i) t[i] = rng->Uniform(-scale, scale);
  return t;
}

void Randomize(ParamSet<double>* p, Rng* rng, double scale = 0.5) {
  for (size_t i = 0; i < p->size(); ++i) {
    for (auto& v : p->tensor(i).values()) v = rng->Uniform(-scale, scale);
  }
}

TEST(Tensor, MatVecMatchesLoops) {
  Rng rng(1);
  const auto w = RandomTensor({3, 4}, &rng);
  const auto x = RandomTensor({4}, &rng);
  std::vector<double> y(3);
  MatVec<double>(w, x.values(), y);
  for (int r = 0; r < 3; ++r) {
    double s = 0;
    for (int c = 0; c < 4; ++c) s += w.at(r, c) * x[c];
    EXPECT_NEAR(y[r], s, 1e-12);
  }
  std::vector<double> dx(4, 1.0);
  MatTVecAdd<double>(w, y, dx);
  for (int c = 0; c < 4; ++c) {
    double s = 1.0;
    for (int r = 0; r < 3; ++r) s += w.at(r, c) * y[r];
    EXPECT_NEAR(dx[c], s, 1e-12);
  }
  Tensor<double> dw({3, 4});
  AddOuter<double>(y, x.values(), &dw);
  EXPECT_NEAR(dw.at(2, 1), y[2] * x[1], 1e-12);
  EXPECT_NEAR(Dot<double>(x.values(), x.values()), x[0] * x[0] + x[1] * x[1] + x[2] * x[2] +
                                                       x[3] * x[3], 1e-12);
}

TEST(Tensor, CastAndFinite) {
  Tensor<float> t({2, 2}, 1.5f);
  EXPECT_TRUE(t.AllFinite());
  EXPECT_EQ(t.Cast<double>()[3], 1.5);
  t[1] = std::nanf("");
  EXPECT_FALSE(t.AllFinite());
  EXPECT_EQ(ShapeString({2, 3}), "[2x3]");
}

// Straight-line GRU step, independent of the library kernels.
std::vector<double> OracleGruStep(const Tensor<double>& w, const Tensor<double>& u,
                                  const Tensor<double>& b, const std::vector<double>& x,
                                  const std::vector<double>& h) {
  const int hd = static_cast<int>(h.size());
  const int in = static_cast<int>(x.size());
  auto gate = [&](int g, int i, const std::vector<double>& hh) {
    double s = b[g * hd + i];
    for (int k = 0; k < in; ++k) s += w.at(g * hd + i, k) * x[k];
    for (int k = 0; k < hd; ++k) s += u.at(g * hd + i, k) * hh[k];
    return s;
  };
  std::vector<double> r(hd), z(hd), out(hd);
  for (int i = 0; i < hd; ++i) {
    r[i] = 1 / (1 + std::exp(-gate(0, i, h)));
    z[i] = 1 / (1 + std::exp(-gate(1, i, h)));
  }
  std::vector<double> rh(hd);
  for (int i = 0; i < hd; ++i) rh[i] = r[i] * h[i];
  for (int i = 0; i < hd; ++i) {
    const double n = std::tanh(gate(2, i, rh));
    out[i] = (1 - z[i]) * n + z[i] * h[i];
  }
  return out;
}

TEST(Gru, ForwardMatchesHandUnrolledSteps) {
  Rng rng(2);
  const int in = 3, hd = 2, n = 4;
  ParamSet<double> p;
  AddGruParams(&p, "g", in, hd);
  Randomize(&p, &rng);
  const auto xs = RandomTensor({n, in}, &rng, 1.0);
  const auto gp = GruParamsFrom(p, "g");
  for (bool reverse : {false, true}) {
    const auto tr = GruForward(gp, xs, reverse);
    std::vector<double> h(hd, 0.0);
    for (int step = 0; step < n; ++step) {
      const int pos = reverse ? n - 1 - step : step;
      std::vector<double> x(xs.row(pos).begin(), xs.row(pos).end());
      h = OracleGruStep(p["g.W"], p["g.U"], p["g.b"], x, h);
      for (int i = 0; i < hd; ++i) EXPECT_NEAR(tr.OutputAt(pos)[i], h[i], 1e-12);
    }
  }
}

TEST(Gru, BidirectionalFinalConcatenation) {
  Rng rng(3);
  ParamSet<double> p;
  AddBiGruParams(&p, "e", 2, 3);
  Randomize(&p, &rng);
  const auto xs = RandomTensor({5, 2}, &rng, 1.0);
  const auto tr = BiGruForward(BiGruParamsFrom(p, "e"), xs);
  const auto fin = BiGruFinalStates(tr);
  const auto all = BiGruAllStates(tr);
  ASSERT_EQ(fin.size(), 6u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(fin[i], all.at(4, i));
    EXPECT_EQ(fin[3 + i], all.at(0, 3 + i));
  }
}

TEST(Gru, BackwardPassesGradCheck) {
  Rng rng(4);
  ParamSet<double> p;
  AddBiGruParams(&p, "e", 2, 3);
  p.Add("x", {4, 2});
  Randomize(&p, &rng, 0.8);
  const auto weights = RandomTensor({4, 6}, &rng, 1.0);
  const LossFn loss = [&](const ParamSet<double>& q, ParamSet<double>* g) {
    const auto bp = BiGruParamsFrom(q, "e");
    const auto tr = BiGruForward(bp, q["x"]);
    const auto all = BiGruAllStates(tr);
    double l = 0;
    for (size_t i = 0; i < all.size(); ++i) l += weights[i] * all[i];
    if (g != nullptr) {
      BiGruBackwardAll(bp, tr, weights, BiGruGradsFrom(g, "e"), &(*g)["x"]);
    }
    return l;
  };
  const auto res = GradCheck(loss, p);
  EXPECT_LT(res.max_rel_error, 1e-6) << res.worst_param << "[" << res.worst_index << "]";
}

TEST(CharCnn, MatchesWindowOracle) {
  Rng rng(5);
  const int vc = 6, cd = 2, f = 3, width = 3;
  const auto emb = RandomTensor({vc, cd}, &rng, 1.0);
  const auto filt = RandomTensor({f, width * cd}, &rng, 1.0);
  const auto bias = RandomTensor({f}, &rng, 0.2);
  const CharCnnParams<double> p{&emb, &filt, &bias, width};
  const std::vector<int> ids = {1, 4, 2, 5};
  const auto tr = CharCnnForward<double>(p, ids);
  const int len = static_cast<int>(ids.size());
  for (int k = 0; k < f; ++k) {
    double best = -1e300;
    for (int t = 0; t < len; ++t) {
      double s = bias[k];
      for (int o = 0; o < width; ++o) {
        const int pos = t + o - width / 2;
        if (pos < 0 || pos >= len) continue;
        for (int d = 0; d < cd; ++d) s += filt.at(k, o * cd + d) * emb.at(ids[pos], d);
      }
      best = std::max(best, s);
    }
    EXPECT_NEAR(tr.output[k], std::max(0.0, best), 1e-12);
  }
}

TEST(CharCnn, BackwardPassesGradCheck) {
  Rng rng(6);
  ParamSet<double> p;
  p.Add("emb", {5, 2});
  p.Add("filt", {4, 6});
  p.Add("bias", {4});
  Randomize(&p, &rng, 1.0);
  for (auto& v : p["bias"].values()) v = 0.3;  // keep filters away from the ReLU kink
  const std::vector<int> ids = {0, 3, 1};
  const Tensor<double> weights = RandomTensor({4}, &rng, 1.0);
  const LossFn loss = [&](const ParamSet<double>& q, ParamSet<double>* g) {
    const CharCnnParams<double> cp{&q["emb"], &q["filt"], &q["bias"], 3};
    const auto tr = CharCnnForward<double>(cp, ids);
    double l = 0;
    for (int k = 0; k < 4; ++k) l += weights[k] * tr.output[k];
    if (g != nullptr) {
      CharCnnBackward<double>(cp, tr, weights.values(),
                              {&(*g)["emb"], &(*g)["filt"], &(*g)["bias"]});
    }
    return l;
  };
  EXPECT_LT(GradCheck(loss, p).max_rel_error, 1e-6);
}

TEST(CharCnn, EmptyWordGivesZeros) {
  Tensor<double> emb({2, 2}, 1.0), filt({3, 6}, 1.0), bias({3}, 1.0);
  const auto tr = CharCnnForward<double>({&emb, &filt, &bias, 3}, {});
  EXPECT_EQ(tr.output, std::vector<double>(3, 0.0));
}

TEST(Adam, FirstStepIsSignedLearningRate) {
  ParamSet<double> p;
  p.Add("w", {3});
  p["w"][0] = 1.0;
  ParamSet<double> g = p.ZerosLike();
  g["w"][0] = 0.5;
  g["w"][1] = -2.0;
  auto st = AdamState<double>::For(p);
  AdamStep(&p, g, &st, 0.1);
  // m_hat = g, v_hat = g^2 after bias correction.
  EXPECT_NEAR(p["w"][0], 1.0 - 0.1 * 0.5 / (0.5 + 1e-8), 1e-12);
  EXPECT_NEAR(p["w"][1], 0.1 * 2.0 / (2.0 + 1e-8), 1e-12);
  EXPECT_EQ(p["w"][2], 0.0);
  EXPECT_EQ(st.step, 1);
}

TEST(Adam, SecondStepClosedForm) {
  ParamSet<double> p;
  p.Add("w", {1});
  auto st = AdamState<double>::For(p);
  ParamSet<double> g = p.ZerosLike();
  const double g1 = 1.0, g2 = -3.0, lr = 0.01, b1 = 0.9, b2 = 0.999;
  g["w"][0] = g1;
  AdamStep(&p, g, &st, lr);
  const double after1 = p["w"][0];
  g["w"][0] = g2;
  AdamStep(&p, g, &st, lr);
  const double m = b1 * (1 - b1) * g1 + (1 - b1) * g2;
  const double v = b2 * (1 - b2) * g1 * g1 + (1 - b2) * g2 * g2;
  const double mhat = m / (1 - b1 * b1), vhat = v / (1 - b2 * b2);
  EXPECT_NEAR(p["w"][0], after1 - lr * mhat / (std::sqrt(vhat) + 1e-8), 1e-12);
}

TEST(Adam, NonFiniteGradientLeavesParams) {
  ParamSet<double> p;
  p.Add("w", {2});
  auto st = AdamState<double>::For(p);
  ParamSet<double> g = p.ZerosLike();
  g["w"][1] = std::nan("");
  EXPECT_THROW(AdamStep(&p, g, &st, 0.1), NumericError);
  EXPECT_EQ(p["w"][0], 0.0);
  EXPECT_EQ(st.step, 0);
}

TEST(Adam, ShapeMismatchIsConfigError) {
  ParamSet<double> p, g;
  p.Add("w", {2});
  g.Add("w", {3});
  auto st = AdamState<double>::For(p);
  EXPECT_THROW(AdamStep(&p, g, &st, 0.1), ConfigError);
}

TEST(Adam, ClipGlobalNorm) {
  ParamSet<double> g;
  g.Add("a", {2});
  g.Add("b", {1});
  g["a"][0] = 6;
  g["a"][1] = 0;
  g["b"][0] = 8;
  EXPECT_NEAR(ClipGlobalNorm(&g, 5.0), 10.0, 1e-12);
  EXPECT_NEAR(g["a"][0], 3.0, 1e-12);
  EXPECT_NEAR(g["b"][0], 4.0, 1e-12);
  EXPECT_NEAR(ClipGlobalNorm(&g, 5.0), 5.0, 1e-12);
  EXPECT_NEAR(g["b"][0], 4.0, 1e-12);
}

TEST(GradCheck, QuadraticIsExact) {
  ParamSet<double> p;
  p.Add("w", {3});
  p["w"][0] = 1;
  p["w"][1] = -2;
  p["w"][2] = 0.5;
  const LossFn good = [](const ParamSet<double>& q, ParamSet<double>* g) {
    double l = 0;
    for (int i = 0; i < 3; ++i) {
      l += (i + 1) * q["w"][i] * q["w"][i];
      if (g) (*g)["w"][i] += 2 * (i + 1) * q["w"][i];
    }
    return l;
  };
  const auto ok = GradCheck(good, p);
  EXPECT_LT(ok.max_rel_error, 1e-8);
  EXPECT_EQ(ok.coordinates, 3u);
  const LossFn bad = [&](const ParamSet<double>& q, ParamSet<double>* g) {
    const double l = good(q, g);
    if (g) (*g)["w"][1] *= 1.1;
    return l;
  };
  const auto wrong = GradCheck(bad, p);
  EXPECT_GT(wrong.max_rel_error, 0.05);
  EXPECT_EQ(wrong.worst_index, 1u);
}

TEST(GradCheck, NonFiniteLossThrows) {
  ParamSet<double> p;
  p.Add("w", {1});
  const LossFn f = [](const ParamSet<double>&, ParamSet<double>*) { return std::nan(""); };
  EXPECT_THROW(GradCheck(f, p), NumericError);
}

TEST(Dropout, MaskValues) {
  Rng rng(7);
  const auto m = DropoutMask<double>({1000}, 0.5, &rng);
  int kept = 0;
  for (double v : m.values()) {
    EXPECT_TRUE(v == 0.0 || v == 2.0);
    kept += v != 0.0;
  }
  EXPECT_GT(kept, 400);
  EXPECT_LT(kept, 600);
  const auto none = DropoutMask<double>({10}, 0.0, &rng);
  for (double v : none.values()) EXPECT_EQ(v, 1.0);
}

Hyper SmallHyper() {
  Hyper h;
  h.word_emb_dim = 3;
  h.char_emb_dim = 2;
  h.char_filters = 4;
  h.rnn_hidden = 2;
  return h;
}

TEST(Hyper, MapRoundTrip) {
  Hyper h = SmallHyper();
  h.gamma = 0.5;
  h.seed = 99;
  EXPECT_EQ(Hyper::FromMap(h.ToMap()), h);
  EXPECT_FALSE(h.Set("nope", "1"));
  EXPECT_THROW(h.Set("epochs", "many"), ConfigError);
}

TEST(Hyper, ValidateRejectsBadValues) {
  Hyper h;
  h.Validate();
  h.gamma = 1.5;
  EXPECT_THROW(h.Validate(), ConfigError);
  h = Hyper();
  h.conv_width = 2;
  EXPECT_THROW(h.Validate(), ConfigError);
  h = Hyper();
  h.dropout = 1.0;
  EXPECT_THROW(h.Validate(), ConfigError);
}

TEST(ModelParams, ShapesFollowHyper) {
  const Hyper h = SmallHyper();
  const auto p = ModelParamShapes<float>(h, 10, 7);
  EXPECT_EQ(p["word_lookup"].shape(), (std::vector<int>{10, 3}));
  EXPECT_EQ(p["char_lookup"].shape(), (std::vector<int>{7, 2}));
  EXPECT_EQ(p["char_conv_W"].shape(), (std::vector<int>{4, 6}));
  EXPECT_EQ(p["entity_rnn.fwd.W"].shape(), (std::vector<int>{6, 7}));
  EXPECT_EQ(p["email_rnn.l0.bwd.W"].shape(), (std::vector<int>{6, 3}));
  EXPECT_EQ(p["email_rnn.l1.fwd.W"].shape(), (std::vector<int>{6, 4}));
  EXPECT_EQ(p["attn_A"].shape(), (std::vector<int>{4, 4}));
  EXPECT_EQ(p["score_M"].shape(), (std::vector<int>{8}));
  EXPECT_EQ(p["crf_P"].shape(), (std::vector<int>{4, 2}));
  EXPECT_EQ(p["crf_T"].shape(), (std::vector<int>{2, 2}));
  EXPECT_FALSE(p.Has("email_rnn.l2.fwd.W"));
}

TEST(ModelParams, InitIsSeededAndChecked) {
  Hyper h = SmallHyper();
  const auto a = InitModelParams(h, 10, 7);
  EXPECT_EQ(a, InitModelParams(h, 10, 7));
  for (float v : a["char_conv_b"].values()) EXPECT_EQ(v, 0.0f);
  CheckModelParams(a, h, 10, 7);
  EXPECT_THROW(CheckModelParams(a, h, 11, 7), FormatError);
  h.seed = 2;
  EXPECT_NE(a, InitModelParams(h, 10, 7));
}

ModelContainer SmallContainer() {
  ModelContainer c;
  c.hyper = SmallHyper();
  c.threshold = 0.375;
  c.string_tables["words"] = {"<unk>", "next", "week"};
  c.params = InitModelParams(c.hyper, 3, 5);
  return c;
}

TEST(Container, RoundTripIsExact) {
  const ModelContainer c = SmallContainer();
  std::stringstream ss;
  WriteContainer(c, ss);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 8), std::string("TSMODEL\0", 8));
  const ModelContainer back = ReadContainer(ss);
  EXPECT_EQ(back, c);
  std::stringstream again;
  WriteContainer(back, again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(Container, CorruptFilesAreFormatErrors) {
  std::stringstream ss;
  WriteContainer(SmallContainer(), ss);
  const std::string bytes = ss.str();
  auto read = [](const std::string& b) {
    std::stringstream in(b);
    return ReadContainer(in);
  };
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(read(bad_magic), FormatError);
  std::string bad_version = bytes;
  bad_version[8] = 9;
  EXPECT_THROW(read(bad_version), FormatError);
  EXPECT_THROW(read(bytes.substr(0, bytes.size() - 3)), FormatError);
  EXPECT_THROW(read(bytes + "x"), FormatError);
  EXPECT_THROW(read(bytes.substr(0, 12)), FormatError);
}

TEST(Container, MissingFileIsConfigError) {
  EXPECT_THROW(ReadContainer("/nonexistent/model.bin"), ConfigError);
}

}  // namespace
}  // namespace timescope::nn
