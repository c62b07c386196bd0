// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/decoding.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cdrud/common.h"
#include "cdrud/random.h"

namespace cdrud {

Eigen::Index ArgMax(const Eigen::VectorXd& p) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < p.size(); ++j) {
    if (p(j) > p(best)) best = j;
  }
  return best;
}

SampleWeights MceWeights(const Eigen::MatrixXd& posteriors) {
  const Eigen::Index l_count = posteriors.rows();
  const Eigen::Index classes = posteriors.cols();
  if (l_count < 1) throw std::invalid_argument("need at least one sample");
  if (classes < 2) throw std::invalid_argument("MCE margin needs at least two classes");
  SampleWeights out;
  out.margins.resize(l_count);
  for (Eigen::Index l = 0; l < l_count; ++l) {
    const Eigen::VectorXd p = posteriors.row(l).transpose();
    const Eigen::Index g = ArgMax(p);
    double runner_up = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < classes; ++j) {
      if (j != g) runner_up = std::max(runner_up, p(j));
    }
    out.margins(l) = p(g) - runner_up;
  }
  double total = 0.0;
  for (Eigen::Index l = 0; l < l_count; ++l) total += out.margins(l);
  if (total < kWeightEpsilon) {
    out.degenerate = true;
    out.weights = Eigen::VectorXd::Constant(l_count, 1.0 / static_cast<double>(l_count));
  } else {
    out.weights = out.margins / total;
  }
  return out;
}

// Both averages use running-mean updates in sample order, so a set of
// identical posteriors averages to exactly that posterior.
Eigen::VectorXd AverageArithmetic(const Eigen::MatrixXd& posteriors) {
  if (posteriors.rows() < 1) throw std::invalid_argument("need at least one sample");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(posteriors.cols());
  for (Eigen::Index l = 0; l < posteriors.rows(); ++l) {
    acc += (posteriors.row(l).transpose() - acc) / static_cast<double>(l + 1);
  }
  return acc;
}

Eigen::VectorXd AverageWeighted(const Eigen::MatrixXd& posteriors, const Eigen::VectorXd& weights) {
  if (weights.size() != posteriors.rows()) throw DimensionError("one weight per sample required");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(posteriors.cols());
  double total = 0.0;
  for (Eigen::Index l = 0; l < posteriors.rows(); ++l) {
    if (weights(l) == 0.0) continue;
    total += weights(l);
    acc += (weights(l) / total) * (posteriors.row(l).transpose() - acc);
  }
  return acc;
}

Eigen::VectorXd DecodeFrameBaseline(const MlpModel& model, const Eigen::VectorXd& mean_input) {
  return model.Forward(mean_input);
}

Eigen::VectorXd DecodeFrameArithmetic(const MlpModel& model, const SampleSet& samples) {
  return AverageArithmetic(model.ForwardBatch(samples.samples));
}

Eigen::VectorXd DecodeFrameWeighted(const MlpModel& model, const SampleSet& samples) {
  const Eigen::MatrixXd p = model.ForwardBatch(samples.samples);
  return AverageWeighted(p, MceWeights(p).weights);
}

DecodeMode ParseDecodeMode(const std::string& name) {
  if (name == "baseline") return DecodeMode::kBaseline;
  if (name == "arithmetic") return DecodeMode::kArithmetic;
  if (name == "weighted") return DecodeMode::kWeighted;
  throw std::invalid_argument("unknown decode mode: " + name);
}

std::string DecodeModeName(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::kBaseline: return "baseline";
    case DecodeMode::kArithmetic: return "arithmetic";
    case DecodeMode::kWeighted: return "weighted";
  }
  return "?";
}

int ContextForInputDim(std::size_t input_dim) {
  if (input_dim == 0 || input_dim % kFrameDim != 0 || (input_dim / kFrameDim) % 2 == 0) {
    throw DimensionError("model input width " + std::to_string(input_dim) + " is not 72 * (2c + 1)");
  }
  return static_cast<int>((input_dim / kFrameDim - 1) / 2);
}

FrameDecode DecodeUtterance(const MlpModel& model, const Eigen::MatrixXd& frames, const Eigen::MatrixXd& variances,
                            const DecodeOptions& options) {
  const int context = ContextForInputDim(model.InputDim());
  if (options.mode != DecodeMode::kBaseline && options.num_samples < 1) {
    throw std::invalid_argument("need at least one sample");
  }
  const UtteranceSampler sampler(frames, variances, context, options.seed, options.clip);
  const std::size_t t_count = sampler.num_frames();
  FrameDecode out;
  out.posteriors.resize(static_cast<Eigen::Index>(t_count), static_cast<Eigen::Index>(model.OutputDim()));
  out.sample_margin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(t_count));

  auto decode_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Eigen::Index row = static_cast<Eigen::Index>(t);
      if (options.mode == DecodeMode::kBaseline) {
        out.posteriors.row(row) = DecodeFrameBaseline(model, sampler.SplicedMean(t)).transpose();
        continue;
      }
      const SampleSet samples = sampler.SplicedSamples(t, options.num_samples);
      const Eigen::MatrixXd p = model.ForwardBatch(samples.samples);
      const SampleWeights w = MceWeights(p);
      out.sample_margin(row) = w.margins.mean();
      out.posteriors.row(row) = (options.mode == DecodeMode::kArithmetic ? AverageArithmetic(p)
                                                                           : AverageWeighted(p, w.weights))
                                    .transpose();
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, t_count));
  if (jobs == 1) {
    decode_range(0, t_count);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (t_count + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs; ++j) {
      const std::size_t begin = j * chunk, end = std::min(t_count, begin + chunk);
      if (begin < end) workers.emplace_back(decode_range, begin, end);
    }
    for (auto& w : workers) w.join();
  }
  return out;
}

const ModeAccuracy& AccuracyReport::Get(DecodeMode mode) const {
  for (const ModeAccuracy& m : modes) {
    if (m.mode == mode) return m;
  }
  throw std::out_of_range("mode not in report: " + DecodeModeName(mode));
}

std::string AccuracyReport::ToJson() const {
  nlohmann::ordered_json j;
  j["num_samples"] = num_samples;
  j["seed"] = seed;
  j["modes"] = nlohmann::ordered_json::array();
  for (const ModeAccuracy& m : modes) {
    j["modes"].push_back({{"mode", DecodeModeName(m.mode)},
                          {"frames", m.frames},
                          {"correct", m.correct},
                          {"accuracy", m.accuracy},
                          {"mean_margin", m.mean_margin},
                          {"mean_sample_margin", m.mean_sample_margin}});
  }
  return j.dump(2) + "\n";
}

std::string AccuracyReport::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  out << "mode,frames,correct,accuracy,mean_margin,mean_sample_margin,num_samples,seed\n";
  for (const ModeAccuracy& m : modes) {
    out << DecodeModeName(m.mode) << "," << m.frames << "," << m.correct << "," << m.accuracy << ","
        << m.mean_margin << "," << m.mean_sample_margin << "," << num_samples << "," << seed << "\n";
  }
  return out.str();
}

AccuracyReport EvaluateFrameAccuracy(const MlpModel& model, const std::vector<LabeledUtterance>& utterances,
                                     const std::vector<DecodeMode>& modes, std::size_t num_samples,
                                     std::uint64_t seed, ClipMode clip, std::size_t jobs) {
  if (utterances.empty()) throw std::invalid_argument("no utterances to evaluate");
  if (modes.empty()) throw std::invalid_argument("no decode modes requested");
  AccuracyReport report;
  report.num_samples = num_samples;
  report.seed = seed;
  for (DecodeMode mode : modes) {
    ModeAccuracy acc;
    acc.mode = mode;
    double margin_sum = 0.0, sample_margin_sum = 0.0;
    for (std::size_t u = 0; u < utterances.size(); ++u) {
      const LabeledUtterance& utt = utterances[u];
      if (utt.labels.size() != static_cast<std::size_t>(utt.frames.rows())) {
        throw DimensionError("utterance " + std::to_string(u) + ": label count does not match frames");
      }
      DecodeOptions opts;
      opts.mode = mode;
      opts.num_samples = num_samples;
      opts.seed = DeriveSeed(seed, "utterance", u);
      opts.clip = clip;
      opts.jobs = jobs;
      const FrameDecode dec = DecodeUtterance(model, utt.frames, utt.variances, opts);
      for (Eigen::Index t = 0; t < dec.posteriors.rows(); ++t) {
        const Eigen::VectorXd p = dec.posteriors.row(t).transpose();
        if (ArgMax(p) == utt.labels[static_cast<std::size_t>(t)]) ++acc.correct;
        if (p.size() >= 2) {
          Eigen::VectorXd sorted = p;
          std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
          margin_sum += sorted(0) - sorted(1);
        }
        sample_margin_sum += dec.sample_margin(t);
        ++acc.frames;
      }
    }
    if (acc.frames == 0) throw std::invalid_argument("no frames to evaluate");
    acc.accuracy = static_cast<double>(acc.correct) / static_cast<double>(acc.frames);
    acc.mean_margin = margin_sum / static_cast<double>(acc.frames);
    acc.mean_sample_margin = sample_margin_sum / static_cast<double>(acc.frames);
    report.modes.push_back(acc);
  }
  return report;
}

}  // namespace cdrud
