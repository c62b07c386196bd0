// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "commands.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "cdrud/decoding.h"
#include "cdrud/feature_io.h"
#include "cdrud/features.h"
#include "cdrud/frame_task.h"
#include "cdrud/io_util.h"
#include "cdrud/mlp.h"
#include "cdrud/random.h"
#include "cdrud/scene.h"
#include "cdrud/trainer.h"
#include "cdrud/wav.h"

namespace cdrud::cli {

namespace {

ArrayGeometry LoadGeometry(const std::string& path) {
  return path.empty() ? ArrayGeometry::Default() : ReadGeometry(path);
}

WavEncoding ParseEncoding(const std::string& name) {
  if (name == "float32") return WavEncoding::kFloat32;
  if (name == "pcm16") return WavEncoding::kPcm16;
  throw std::invalid_argument("unknown WAV encoding: " + name);
}

DiffuseLobes ParseLobes(const std::string& name) {
  if (name == "clip") return DiffuseLobes::kClip;
  if (name == "abs") return DiffuseLobes::kAbs;
  throw std::invalid_argument("unknown diffuse-lobe mode: " + name);
}

nlohmann::ordered_json DrrJson(double drr_db) {
  if (std::isfinite(drr_db)) return drr_db;
  return drr_db > 0 ? "inf" : "-inf";
}

void SimulateScene(const SimulateArgs& args) {
  if (args.out_wav.empty()) throw std::invalid_argument("simulate: --out-wav is required for --kind scene");
  const ArrayGeometry geometry = LoadGeometry(args.geometry);
  SceneSpec spec;
  spec.direct_doa = {args.azimuth, args.elevation};
  spec.drr_db = ParseDrr(args.drr);
  spec.duration_s = args.duration;
  spec.sample_rate = args.sample_rate;
  spec.seed = args.seed;
  const MultichannelSignal scene = GenerateScene(spec, geometry, args.n_directions);
  WriteWav(args.out_wav, scene, ParseEncoding(args.encoding));

  nlohmann::ordered_json side;
  side["drr_db"] = DrrJson(spec.drr_db);
  side["true_cdr"] = std::isfinite(spec.drr_db) ? nlohmann::ordered_json(std::pow(10.0, spec.drr_db / 10.0))
                                                : DrrJson(spec.drr_db);
  side["doa"] = {{"azimuth", spec.direct_doa.azimuth}, {"elevation", spec.direct_doa.elevation}};
  side["seed"] = spec.seed;
  side["duration_s"] = spec.duration_s;
  side["sample_rate"] = spec.sample_rate;
  side["num_samples"] = scene.NumSamples();
  side["n_directions"] = args.n_directions;
  side["encoding"] = args.encoding;
  side["speed_of_sound"] = geometry.speed_of_sound();
  auto mics = nlohmann::ordered_json::array();
  for (const Vec3& m : geometry.mics()) mics.push_back({m.x, m.y, m.z});
  side["mics"] = mics;
  const std::string sidecar = args.sidecar.empty() ? args.out_wav + ".json" : args.sidecar;
  WriteFileAtomic(sidecar, side.dump(2) + "\n");
}

void SimulateTask(const SimulateArgs& args) {
  if (args.out_dir.empty()) throw std::invalid_argument("simulate: --out-dir is required for --kind task");
  const std::filesystem::path dir(args.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const FrameTask task(FrameTaskConfig{}, DeriveSeed(args.seed, "task"));
  const FrameTaskData train = task.Clean(args.train_frames, DeriveSeed(args.seed, "task-train"));
  const FrameTaskData test = task.Noisy(args.test_frames, DeriveSeed(args.seed, "task-test"));
  WriteFeatureFile(dir / "train.udft", train.frames);
  WriteFeatureFile(dir / "train.var.udft", train.variances, kFeatureFlagVariance);
  WriteLabels(dir / "train.labels", train.labels);
  WriteFeatureFile(dir / "test.udft", test.frames);
  WriteFeatureFile(dir / "test.var.udft", test.variances, kFeatureFlagVariance);
  WriteLabels(dir / "test.labels", test.labels);
}

// Frames (T x 72) and variances (T x 24) of one utterance.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> LoadObservations(const std::string& features,
                                                             const std::string& variances) {
  FeatureFile f = ReadFeatureFile(features);
  FeatureFile v = ReadFeatureFile(variances);
  if (f.data.cols() != static_cast<Eigen::Index>(kFrameDim) || (f.flags & kFeatureFlagSpliced)) {
    throw DimensionError(features + ": expected unspliced " + std::to_string(kFrameDim) + "-dim frames");
  }
  if (v.data.cols() != static_cast<Eigen::Index>(kNumMelBands) || v.data.rows() != f.data.rows()) {
    throw DimensionError(variances + ": expected " + std::to_string(f.data.rows()) + " x " +
                         std::to_string(kNumMelBands) + " variances");
  }
  return {std::move(f.data), std::move(v.data)};
}

void CheckModelInput(const MlpModel& model) {
  ContextForInputDim(model.InputDim());
}

}  // namespace

double ParseDrr(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid DRR: " + text);
  }
  if (used != text.size() || std::isnan(v)) throw std::invalid_argument("invalid DRR: " + text);
  return v;
}

void RunSimulate(const SimulateArgs& args) {
  if (args.kind == "scene") {
    SimulateScene(args);
  } else if (args.kind == "task") {
    SimulateTask(args);
  } else {
    throw std::invalid_argument("simulate: unknown --kind " + args.kind);
  }
}

void RunExtract(const ExtractArgs& args) {
  const ArrayGeometry geometry = LoadGeometry(args.geometry);
  const MultichannelSignal signal = ReadWav(args.wav, geometry);
  FeaturePipelineOptions opts;
  opts.stft.dft_length = args.dft_length;
  opts.stft.hop = args.hop;
  opts.stft.window = ParseWindowType(args.window);
  opts.diffuseness.coherence.lambda = args.lambda;
  opts.diffuseness.variance_scale = args.var_scale;
  opts.diffuseness.cdr.cdr_max = args.cdr_max;
  opts.diffuseness.cdr.lobes = ParseLobes(args.lobes);
  opts.look = {args.look_azimuth, args.look_elevation};
  opts.deltas_after_mvn = !args.deltas_before_mvn;
  opts.context = args.context;
  const UtteranceFeatures feats = ExtractFeatures(signal, opts);
  WriteFeatureFile(args.out, feats.frames);
  WriteFeatureFile(args.out_var.empty() ? args.out + ".var" : args.out_var, feats.variances, kFeatureFlagVariance);
  if (!args.out_spliced.empty()) {
    WriteFeatureFile(args.out_spliced, feats.Spliced(args.context), kFeatureFlagSpliced);
  }
}

void RunTrain(const TrainArgs& args) {
  if (args.features.empty()) throw std::invalid_argument("train: no feature files");
  if (args.features.size() != args.labels.size()) {
    throw std::invalid_argument("train: need one label file per feature file");
  }
  std::vector<Eigen::MatrixXd> parts;
  std::vector<int> labels;
  Eigen::Index rows = 0;
  for (std::size_t i = 0; i < args.features.size(); ++i) {
    FeatureFile f = ReadFeatureFile(args.features[i]);
    const std::vector<int> l = ReadLabels(args.labels[i]);
    if (static_cast<Eigen::Index>(l.size()) != f.data.rows()) {
      throw DimensionError(args.labels[i] + ": label count does not match " + args.features[i]);
    }
    if (!(f.flags & kFeatureFlagSpliced)) {
      if (f.data.cols() != static_cast<Eigen::Index>(kFrameDim)) {
        throw DimensionError(args.features[i] + ": expected " + std::to_string(kFrameDim) + "-dim frames");
      }
      f.data = Splice(f.data, args.context);
    }
    if (!parts.empty() && parts.front().cols() != f.data.cols()) {
      throw DimensionError(args.features[i] + ": input width differs from earlier files");
    }
    rows += f.data.rows();
    labels.insert(labels.end(), l.begin(), l.end());
    parts.push_back(std::move(f.data));
  }
  Eigen::MatrixXd inputs(rows, parts.front().cols());
  Eigen::Index r = 0;
  for (const auto& p : parts) {
    inputs.middleRows(r, p.rows()) = p;
    r += p.rows();
  }
  TrainConfig config;
  config.hidden = args.hidden;
  config.epochs = args.epochs;
  config.batch_size = args.batch_size;
  config.learning_rate = args.learning_rate;
  config.momentum = args.momentum;
  config.seed = DeriveSeed(args.seed, "train");
  SaveModel(args.out, TrainMlp(inputs, labels, config));
}

void RunDecode(const DecodeArgs& args) {
  const MlpModel model = LoadModel(args.model);
  CheckModelInput(model);
  auto [frames, variances] = LoadObservations(args.features, args.variances);
  const DecodeMode mode = ParseDecodeMode(args.mode);
  const ClipMode clip = ParseClipMode(args.clip);

  // Same per-utterance seed as a one-utterance evaluation.
  DecodeOptions opts;
  opts.mode = mode;
  opts.num_samples = mode == DecodeMode::kBaseline ? 0 : args.num_samples;
  opts.seed = DeriveSeed(args.seed, "utterance", 0);
  opts.clip = clip;
  opts.jobs = args.jobs;
  const FrameDecode dec = DecodeUtterance(model, frames, variances, opts);
  WriteFeatureFile(args.out, dec.posteriors, kFeatureFlagPosterior);

  if (args.labels.empty()) {
    if (!args.report.empty() || !args.report_csv.empty()) {
      throw std::invalid_argument("decode: a report needs --labels");
    }
    return;
  }
  LabeledUtterance utt{std::move(frames), std::move(variances), ReadLabels(args.labels)};
  const AccuracyReport report =
      EvaluateFrameAccuracy(model, {utt}, {mode}, opts.num_samples, args.seed, clip, args.jobs);
  if (!args.report.empty()) WriteFileAtomic(args.report, report.ToJson());
  if (!args.report_csv.empty()) WriteFileAtomic(args.report_csv, report.ToCsv());
}

void RunEval(const EvalArgs& args) {
  if (args.features.empty()) throw std::invalid_argument("eval: no feature files");
  if (args.variances.size() != args.features.size() || args.labels.size() != args.features.size()) {
    throw std::invalid_argument("eval: need matching numbers of feature, variance and label files");
  }
  if (args.report.empty() && args.report_csv.empty()) {
    throw std::invalid_argument("eval: give --report and/or --report-csv");
  }
  const MlpModel model = LoadModel(args.model);
  CheckModelInput(model);
  std::vector<LabeledUtterance> utts;
  for (std::size_t i = 0; i < args.features.size(); ++i) {
    auto [frames, variances] = LoadObservations(args.features[i], args.variances[i]);
    utts.push_back({std::move(frames), std::move(variances), ReadLabels(args.labels[i])});
  }
  std::vector<DecodeMode> modes;
  for (const auto& m : args.modes) modes.push_back(ParseDecodeMode(m));
  const AccuracyReport report =
      EvaluateFrameAccuracy(model, utts, modes, args.num_samples, args.seed, ParseClipMode(args.clip), args.jobs);
  if (!args.report.empty()) WriteFileAtomic(args.report, report.ToJson());
  if (!args.report_csv.empty()) WriteFileAtomic(args.report_csv, report.ToCsv());
}

}  // namespace cdrud::cli
