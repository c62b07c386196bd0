// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_TOOLS_COMMANDS_H_
#define CDRUD_TOOLS_COMMANDS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace cdrud::cli {

struct SimulateArgs {
  std::string kind = "scene";  // scene | task
  std::uint64_t seed = 0;
  // scene
  std::string out_wav;
  std::string sidecar;  // defaults to <out_wav>.json
  std::string geometry;
  std::string drr = "0";
  double azimuth = 0.0;
  double elevation = 0.0;
  double duration = 10.0;
  double sample_rate = 16000.0;
  std::size_t n_directions = 512;
  std::string encoding = "float32";
  // task
  std::string out_dir;
  std::size_t train_frames = 20000;
  std::size_t test_frames = 5000;
};

struct ExtractArgs {
  std::string wav;
  std::string geometry;
  std::string out;
  std::string out_var;
  std::string out_spliced;
  std::size_t dft_length = 512;
  std::size_t hop = 128;
  std::string window = "sqrthann";
  double lambda = 0.8;
  double var_scale = 0.1;
  double cdr_max = 1e4;
  std::string lobes = "clip";
  double look_azimuth = 0.0;
  double look_elevation = 0.0;
  bool deltas_before_mvn = false;
  int context = 5;
};

struct TrainArgs {
  std::vector<std::string> features;
  std::vector<std::string> labels;
  std::string out;
  int context = 5;
  std::vector<std::size_t> hidden = {64, 64};
  std::size_t epochs = 20;
  std::size_t batch_size = 64;
  double learning_rate = 0.1;
  double momentum = 0.9;
  std::uint64_t seed = 0;
};

struct DecodeArgs {
  std::string features;
  std::string variances;
  std::string model;
  std::string out;
  std::string labels;
  std::string report;
  std::string report_csv;
  std::string mode = "weighted";
  std::size_t num_samples = 30;
  std::string clip = "none";
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct EvalArgs {
  std::vector<std::string> features;
  std::vector<std::string> variances;
  std::vector<std::string> labels;
  std::string model;
  std::string report;
  std::string report_csv;
  std::vector<std::string> modes = {"baseline", "arithmetic", "weighted"};
  std::size_t num_samples = 30;
  std::string clip = "none";
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

void RunSimulate(const SimulateArgs& args);
void RunExtract(const ExtractArgs& args);
void RunTrain(const TrainArgs& args);
void RunDecode(const DecodeArgs& args);
void RunEval(const EvalArgs& args);

// "inf", "+inf" and "-inf" are accepted besides plain numbers.
double ParseDrr(const std::string& text);

}  // namespace cdrud::cli

#endif  // CDRUD_TOOLS_COMMANDS_H_
