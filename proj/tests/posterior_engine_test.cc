// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cdrud/common.h"
#include "cdrud/decoding.h"
#include "cdrud/frame_task.h"
#include "cdrud/mlp.h"
#include "cdrud/random.h"
#include "cdrud/sampler.h"
#include "cdrud/trainer.h"
#include "oracles.h"

using namespace cdrud;

namespace {

// 2-2-2 network with fixed parameters; the expected posterior for input
// (0.2, -0.4) was worked out by hand from sigmoid and softmax.
MlpModel FixtureNet() {
  Layer hidden;
  hidden.weights.resize(2, 2);
  hidden.weights << 0.5, -1.0, 1.5, 0.25;
  hidden.bias.resize(2);
  hidden.bias << 0.1, -0.2;
  hidden.activation = Activation::kSigmoid;
  Layer out;
  out.weights.resize(2, 2);
  out.weights << 1.0, -1.0, 0.5, 2.0;
  out.bias.resize(2);
  out.bias << 0.0, 0.3;
  out.activation = Activation::kSoftmax;
  return MlpModel({hidden, out});
}

Eigen::VectorXd FixtureInput() {
  Eigen::VectorXd x(2);
  x << 0.2, -0.4;
  return x;
}

constexpr double kFixtureP0 = 0.18585497520461414;
constexpr double kFixtureP1 = 0.8141450247953859;

Eigen::MatrixXd RandomPosteriors(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  Eigen::MatrixXd p(rows, cols);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = rng.Uniform() + 1e-3;
  for (Eigen::Index i = 0; i < rows; ++i) p.row(i) /= p.row(i).sum();
  return p;
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cdrud_posterior_" + name);
}

// Two Gaussian blobs separated along the diagonal.
void SeparableSet(std::size_t n, Eigen::MatrixXd* x, std::vector<int>* y) {
  Xoshiro256 rng(12);
  x->resize(static_cast<Eigen::Index>(n), 2);
  y->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 2);
    const double centre = c == 0 ? -1.5 : 1.5;
    (*x)(i, 0) = centre + 0.4 * rng.Gaussian();
    (*x)(i, 1) = centre + 0.4 * rng.Gaussian();
    (*y)[i] = c;
  }
}

bool SameParameters(const MlpModel& a, const MlpModel& b) {
  if (a.layers().size() != b.layers().size()) return false;
  for (std::size_t i = 0; i < a.layers().size(); ++i) {
    if (a.layers()[i].weights != b.layers()[i].weights || a.layers()[i].bias != b.layers()[i].bias) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("forward") {
  TEST_CASE("all-zero parameters give a uniform posterior") {
    const MlpModel m = MlpModel::Zeros({10, 4, 5});
    const Eigen::VectorXd p = m.Forward(Eigen::VectorXd::LinSpaced(10, -3, 3));
    for (Eigen::Index j = 0; j < 5; ++j) CHECK(p[j] == doctest::Approx(0.2).epsilon(1e-15));
  }

  TEST_CASE("hand-set 2-2-2 network") {
    const Eigen::VectorXd p = FixtureNet().Forward(FixtureInput());
    CHECK(std::abs(p[0] - kFixtureP0) < 1e-9);
    CHECK(std::abs(p[1] - kFixtureP1) < 1e-9);
    CHECK(DecodeFrameBaseline(FixtureNet(), FixtureInput()) == p);
    CHECK(DecodeFrameBaseline(FixtureNet(), FixtureInput()) == DecodeFrameBaseline(FixtureNet(), FixtureInput()));
  }

  TEST_CASE("outputs are on the simplex for any input") {
    const MlpModel m = MlpModel::RandomInit({20, 16, 16, 7}, 3);
    Xoshiro256 rng(4);
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXd x(20);
      for (Eigen::Index d = 0; d < 20; ++d) x[d] = 50 * rng.Gaussian();
      const Eigen::VectorXd p = m.Forward(x);
      CHECK(std::abs(p.sum() - 1.0) < 1e-6);
      CHECK(p.minCoeff() >= 0.0);
    }
  }

  TEST_CASE("batch forward matches single forward") {
    const MlpModel m = MlpModel::RandomInit({6, 5, 3}, 8);
    Eigen::MatrixXd x = RandomPosteriors(9, 6, 2);
    const Eigen::MatrixXd batch = m.ForwardBatch(x);
    for (Eigen::Index i = 0; i < 9; ++i) {
      CHECK((batch.row(i).transpose() - m.Forward(x.row(i).transpose())).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  TEST_CASE("softmax is stable for large logits") {
    Eigen::MatrixXd logits(1, 3);
    logits << 1000.0, 1000.0, -1000.0;
    const Eigen::MatrixXd p = SoftmaxRows(logits);
    CHECK(p(0, 0) == doctest::Approx(0.5));
    CHECK(p(0, 2) == 0.0);
  }

  TEST_CASE("width and chaining errors") {
    CHECK_THROWS_AS(FixtureNet().Forward(Eigen::VectorXd::Zero(3)), DimensionError);
    Layer a;
    a.weights = Eigen::MatrixXd::Zero(3, 2);
    a.bias = Eigen::VectorXd::Zero(3);
    Layer b;
    b.weights = Eigen::MatrixXd::Zero(2, 4);
    b.bias = Eigen::VectorXd::Zero(2);
    b.activation = Activation::kSoftmax;
    CHECK_THROWS_AS(MlpModel({a, b}), DimensionError);
  }
}

TEST_SUITE("model_io") {
  TEST_CASE("save and load round trip through float32") {
    const MlpModel m = MlpModel::RandomInit({792, 64, 64, 12}, 5);
    const auto path = TempPath("model.udnn");
    SaveModel(path, m);
    const MlpModel back = LoadModel(path);
    CHECK(back.Dims() == m.Dims());
    CHECK(SameParameters(back, RoundToFloat(m)));
    std::filesystem::remove(path);
  }

  TEST_CASE("corrupt model files") {
    const auto path = TempPath("bad.udnn");
    SaveModel(path, FixtureNet());
    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 4);
    CHECK_THROWS_AS(LoadModel(path), FormatError);
    {
      std::FILE* f = std::fopen(path.c_str(), "wb");
      std::fputs("UDFTxxxxxxxxxxxxxxxxxxxxxxxxx", f);
      std::fclose(f);
    }
    CHECK_THROWS_AS(LoadModel(path), FormatError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(LoadModel(TempPath("absent.udnn")), IoError);
  }
}

TEST_SUITE("averaging") {
  TEST_CASE("arithmetic average of two posteriors") {
    Eigen::MatrixXd p(2, 2);
    p << 0.8, 0.2, 0.6, 0.4;
    const Eigen::VectorXd avg = AverageArithmetic(p);
    CHECK(avg[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(avg[1] == doctest::Approx(0.3).epsilon(1e-15));
  }

  TEST_CASE("ArgMax breaks ties toward the lowest index") {
    Eigen::VectorXd p(4);
    p << 0.1, 0.4, 0.4, 0.1;
    CHECK(ArgMax(p) == 1);
  }

  TEST_CASE("margins 0.5 and 0.25 give weights 2/3 and 1/3") {
    Eigen::MatrixXd p(2, 3);
    p << 0.75, 0.25, 0.0, 0.375, 0.625, 0.0;
    const SampleWeights w = MceWeights(p);
    CHECK(w.margins[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.margins[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w.weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(w.weights[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_FALSE(w.degenerate);
  }

  TEST_CASE("equal margins give uniform weights and the arithmetic average") {
    Eigen::MatrixXd p(3, 2);
    p << 0.7, 0.3, 0.3, 0.7, 0.7, 0.3;
    const SampleWeights w = MceWeights(p);
    for (Eigen::Index l = 0; l < 3; ++l) CHECK(w.weights[l] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK((AverageWeighted(p, w.weights) - AverageArithmetic(p)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("fully ambiguous samples fall back to uniform weights") {
    const Eigen::MatrixXd p = Eigen::MatrixXd::Constant(4, 5, 0.2);
    const SampleWeights w = MceWeights(p);
    CHECK(w.degenerate);
    CHECK(w.margins.isZero(0.0));
    for (Eigen::Index l = 0; l < 4; ++l) CHECK(w.weights[l] == 0.25);
    CHECK(std::abs(w.weights.sum() - 1.0) <= 1e-12);
  }

  TEST_CASE("a single class has no competitor") {
    CHECK_THROWS_AS(MceWeights(Eigen::MatrixXd::Ones(3, 1)), std::invalid_argument);
    CHECK_THROWS_AS(MceWeights(Eigen::MatrixXd(0, 3)), std::invalid_argument);
  }

  TEST_CASE("one weight of one selects that sample") {
    const Eigen::MatrixXd p = RandomPosteriors(5, 4, 1);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(5);
    w[3] = 1.0;
    CHECK(AverageWeighted(p, w) == p.row(3).transpose());
  }

  TEST_CASE("weighted average matches direct summation") {
    const Eigen::MatrixXd p = RandomPosteriors(30, 6, 2);
    const SampleWeights w = MceWeights(p);
    CHECK(std::abs(w.weights.sum() - 1.0) <= 1e-12);
    CHECK(w.weights.minCoeff() >= 0.0);
    std::vector<double> ref(6, 0.0);
    for (Eigen::Index l = 0; l < 30; ++l) {
      double top = -1, second = -1;
      for (Eigen::Index j = 0; j < 6; ++j) {
        const double v = p(l, j);
        if (v > top) {
          second = top;
          top = v;
        } else if (v > second) {
          second = v;
        }
      }
      CHECK(std::abs(w.margins[l] - (top - second)) < 1e-15);
    }
    const double total = w.margins.sum();
    for (Eigen::Index l = 0; l < 30; ++l) {
      for (Eigen::Index j = 0; j < 6; ++j) ref[j] += w.margins[l] / total * p(l, j);
    }
    const Eigen::VectorXd got = AverageWeighted(p, w.weights);
    for (Eigen::Index j = 0; j < 6; ++j) CHECK(std::abs(got[j] - ref[j]) < 1e-12);
  }

  TEST_CASE("sample order does not matter") {
    const Eigen::MatrixXd p = RandomPosteriors(20, 5, 3);
    std::vector<int> order(20);
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    std::swap(order[2], order[11]);
    Eigen::MatrixXd q(20, 5);
    for (int l = 0; l < 20; ++l) q.row(l) = p.row(order[l]);
    CHECK((AverageArithmetic(p) - AverageArithmetic(q)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((AverageWeighted(p, MceWeights(p).weights) - AverageWeighted(q, MceWeights(q).weights)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_SUITE("frame_decoding") {
  const MlpModel kNet = MlpModel::RandomInit({72, 16, 6}, 9);

  FeatureDistribution Dist(double variance) {
    Xoshiro256 rng(10);
    Eigen::VectorXd frame(72);
    for (Eigen::Index d = 0; d < 72; ++d) frame[d] = rng.Uniform();
    return FeatureDistribution::FromFrame(frame, Eigen::VectorXd::Constant(24, variance));
  }

  TEST_CASE("zero variance makes every mode equal the baseline") {
    const auto dist = Dist(0.0);
    const auto set = DrawSamples(dist, 25, 4, 0);
    const Eigen::VectorXd base = DecodeFrameBaseline(kNet, dist.mean);
    CHECK(DecodeFrameArithmetic(kNet, set) == base);
    CHECK((DecodeFrameWeighted(kNet, set) - base).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("a single sample decodes to its own posterior") {
    const auto set = DrawSamples(Dist(0.05), 1, 4, 0);
    const Eigen::VectorXd direct = kNet.Forward(set.samples.row(0).transpose());
    CHECK(DecodeFrameArithmetic(kNet, set) == direct);
    CHECK(DecodeFrameWeighted(kNet, set) == direct);
  }

  TEST_CASE("decoded posteriors stay on the simplex") {
    const auto set = DrawSamples(Dist(0.1), 40, 5, 3);
    for (const Eigen::VectorXd& p : {DecodeFrameArithmetic(kNet, set), DecodeFrameWeighted(kNet, set)}) {
      CHECK(p.minCoeff() >= 0.0);
      CHECK(std::abs(p.sum() - 1.0) < 1e-6);
    }
  }

  TEST_CASE("arithmetic estimate converges toward a high-sample reference") {
    const auto dist = Dist(0.2);
    const Eigen::VectorXd ref = DecodeFrameArithmetic(kNet, DrawSamples(dist, 100000, 1, 0));
    auto rms = [&](std::size_t L) {
      double acc = 0.0;
      const int reps = 200;
      for (int r = 0; r < reps; ++r) {
        const Eigen::VectorXd est = DecodeFrameArithmetic(kNet, DrawSamples(dist, L, 1000 + r, 0));
        acc += (est - ref).squaredNorm();
      }
      return std::sqrt(acc / reps);
    };
    // 1/sqrt(L) scaling predicts a factor of 10 from L = 10 to L = 1000.
    const double ratio = rms(10) / rms(1000);
    CHECK(ratio > 7.0);
    CHECK(ratio < 14.0);
  }

  TEST_CASE("decode modes by name") {
    CHECK(ParseDecodeMode("weighted") == DecodeMode::kWeighted);
    CHECK(DecodeModeName(DecodeMode::kArithmetic) == "arithmetic");
    CHECK_THROWS(ParseDecodeMode("median"));
  }
}

TEST_SUITE("utterance_decoding") {
  TEST_CASE("context inferred from the model width") {
    CHECK(ContextForInputDim(72) == 0);
    CHECK(ContextForInputDim(792) == 5);
    CHECK_THROWS_AS(ContextForInputDim(100), DimensionError);
  }

  TEST_CASE("threads give the same posteriors") {
    const FrameTask task(FrameTaskConfig{}, 3);
    const auto data = task.Noisy(40, 4);
    const MlpModel net = MlpModel::RandomInit({792, 8, 12}, 2);
    DecodeOptions opt;
    opt.num_samples = 5;
    opt.seed = 6;
    const auto one = DecodeUtterance(net, data.frames, data.variances, opt);
    opt.jobs = 3;
    const auto three = DecodeUtterance(net, data.frames, data.variances, opt);
    CHECK(one.posteriors == three.posteriors);
    CHECK(one.posteriors.rows() == 40);
  }

  TEST_CASE("accuracy report modes") {
    const FrameTask task(FrameTaskConfig{}, 3);
    const auto noisy = task.Noisy(60, 5);
    const auto clean = task.Clean(60, 5);
    const MlpModel net = MlpModel::RandomInit({72, 8, 12}, 2);
    const std::vector<DecodeMode> all{DecodeMode::kBaseline, DecodeMode::kArithmetic, DecodeMode::kWeighted};

    SUBCASE("zero variance: every mode scores the same") {
      const auto report = EvaluateFrameAccuracy(net, {clean.AsUtterance()}, all, 10, 1);
      CHECK(report.Get(DecodeMode::kBaseline).correct == report.Get(DecodeMode::kArithmetic).correct);
      CHECK(report.Get(DecodeMode::kBaseline).correct == report.Get(DecodeMode::kWeighted).correct);
    }
    SUBCASE("one sample: weighted equals arithmetic") {
      const auto report = EvaluateFrameAccuracy(net, {noisy.AsUtterance()}, all, 1, 7);
      CHECK(report.Get(DecodeMode::kWeighted).correct == report.Get(DecodeMode::kArithmetic).correct);
      CHECK(report.Get(DecodeMode::kWeighted).mean_margin == report.Get(DecodeMode::kArithmetic).mean_margin);
    }
    SUBCASE("report serializations") {
      const auto report = EvaluateFrameAccuracy(net, {noisy.AsUtterance(), clean.AsUtterance()}, all, 4, 7);
      const auto j = nlohmann::json::parse(report.ToJson());
      REQUIRE(j["modes"].size() == 3);
      CHECK(j["modes"][0]["mode"] == "baseline");
      CHECK(j["modes"][2]["frames"] == 120);
      CHECK(j["num_samples"] == 4);
      const double acc = j["modes"][1]["accuracy"];
      CHECK(acc == report.Get(DecodeMode::kArithmetic).accuracy);
      const std::string csv = report.ToCsv();
      CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
      CHECK(csv.rfind("mode,frames,correct,accuracy", 0) == 0);
    }
    SUBCASE("bad input") {
      CHECK_THROWS_AS(EvaluateFrameAccuracy(net, {}, all, 4, 1), std::invalid_argument);
      LabeledUtterance u = noisy.AsUtterance();
      u.labels.pop_back();
      CHECK_THROWS_AS(EvaluateFrameAccuracy(net, {u}, all, 4, 1), DimensionError);
    }
  }
}

TEST_SUITE("trainer") {
  TEST_CASE("gradient matches central differences on a 3-3-2 net") {
    const MlpModel net = MlpModel::RandomInit({3, 3, 2}, 21);
    Xoshiro256 rng(22);
    Eigen::MatrixXd x(10, 3);
    std::vector<int> y(10);
    for (Eigen::Index i = 0; i < 10; ++i) {
      for (Eigen::Index d = 0; d < 3; ++d) x(i, d) = rng.Gaussian();
      y[i] = static_cast<int>(rng.UniformInt(2));
    }
    Gradient g;
    CrossEntropy(net, x, y, &g);
    const double h = 1e-6;
    double worst = 0.0;
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
      for (Eigen::Index i = 0; i < net.layers()[l].weights.size(); ++i) {
        MlpModel plus = net, minus = net;
        plus.mutable_layers()[l].weights.data()[i] += h;
        minus.mutable_layers()[l].weights.data()[i] -= h;
        const double fd = (CrossEntropy(plus, x, y) - CrossEntropy(minus, x, y)) / (2 * h);
        const double an = g.weights[l].data()[i];
        worst = std::max(worst, std::abs(fd - an) / std::max(1e-8, std::abs(fd) + std::abs(an)));
      }
      for (Eigen::Index i = 0; i < net.layers()[l].bias.size(); ++i) {
        MlpModel plus = net, minus = net;
        plus.mutable_layers()[l].bias[i] += h;
        minus.mutable_layers()[l].bias[i] -= h;
        const double fd = (CrossEntropy(plus, x, y) - CrossEntropy(minus, x, y)) / (2 * h);
        const double an = g.bias[l][i];
        worst = std::max(worst, std::abs(fd - an) / std::max(1e-8, std::abs(fd) + std::abs(an)));
      }
    }
    CHECK(worst < 1e-4);
  }

  TEST_CASE("separable toy set is learned within 200 epochs") {
    Eigen::MatrixXd x;
    std::vector<int> y;
    SeparableSet(400, &x, &y);
    TrainConfig cfg;
    cfg.hidden = {8};
    cfg.epochs = 200;
    cfg.batch_size = 32;
    TrainReport report;
    const MlpModel m = TrainMlp(x, y, cfg, &report);
    CHECK(ClassificationAccuracy(m, x, y) >= 0.99);
    CHECK(report.epoch_loss.size() == 200);
    CHECK(report.train_accuracy == ClassificationAccuracy(m, x, y));
  }

  TEST_CASE("loss decreases over the first epoch") {
    Eigen::MatrixXd x;
    std::vector<int> y;
    SeparableSet(400, &x, &y);
    TrainConfig cfg;
    cfg.hidden = {8};
    cfg.epochs = 1;
    cfg.batch_size = 16;
    const MlpModel init = MlpModel::RandomInit({2, 8, 2}, 3);
    const MlpModel after = TrainMlp(init, x, y, cfg);
    CHECK(CrossEntropy(after, x, y) < CrossEntropy(init, x, y));
  }

  TEST_CASE("zero learning rate leaves the parameters alone") {
    Eigen::MatrixXd x;
    std::vector<int> y;
    SeparableSet(100, &x, &y);
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.learning_rate = 0.0;
    const MlpModel init = MlpModel::RandomInit({2, 5, 2}, 4);
    CHECK(SameParameters(TrainMlp(init, x, y, cfg), init));
  }

  TEST_CASE("training is deterministic in the seed") {
    Eigen::MatrixXd x;
    std::vector<int> y;
    SeparableSet(200, &x, &y);
    TrainConfig cfg;
    cfg.hidden = {4};
    cfg.epochs = 3;
    CHECK(SameParameters(TrainMlp(x, y, cfg), TrainMlp(x, y, cfg)));
    TrainConfig other = cfg;
    other.seed = 2;
    CHECK_FALSE(SameParameters(TrainMlp(x, y, cfg), TrainMlp(x, y, other)));
  }

  TEST_CASE("a single class is rejected") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(10, 2);
    CHECK_THROWS_AS(TrainMlp(x, std::vector<int>(10, 1), TrainConfig{}), std::invalid_argument);
  }
}
