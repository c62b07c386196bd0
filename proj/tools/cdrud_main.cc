// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// cdrud: scene simulation, diffuseness feature extraction, classifier
// training and uncertainty decoding.
//
// Every subcommand accepts --config FILE with key=value lines named after
// the long options. Command-line flags override the file, which overrides
// the built-in defaults. The resolved options are printed to stdout (and to
// --echo-config FILE); feeding that text back through --config repeats the
// run.
//
// Exit codes: 0 success, 2 usage, 3 I/O error, 4 malformed input file,
// 5 dimension mismatch, 1 anything else.

#include <cstdio>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdrud/common.h"
#include "cdrud/io_util.h"
#include "commands.h"
#include "run_config.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitDimension = 5;

struct EchoArgs {
  std::string path;
  std::vector<std::string> config_files;
};

CLI::App* AddCommand(CLI::App& app, const std::string& name, const std::string& help, EchoArgs& echo) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", echo.config_files, "key=value file with option defaults")->configurable(false);
  sub->add_option("--echo-config", echo.path, "also write the resolved options to this file")->configurable(false);
  return sub;
}

void EchoConfig(const CLI::App& sub, const EchoArgs& echo) {
  const std::string text = sub.config_to_str(true, false);
  std::cout << text;
  if (!echo.path.empty()) cdrud::WriteFileAtomic(echo.path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial diffuseness features and uncertainty decoding"};
  app.require_subcommand(1);
  app.option_defaults()->take_last();

  EchoArgs echo;
  cdrud::cli::SimulateArgs sim;
  CLI::App* simulate = AddCommand(app, "simulate", "generate a synthetic scene or a frame-classification task", echo);
  simulate->add_option("--kind", sim.kind, "scene: multichannel WAV and sidecar; task: labeled feature files")
      ->check(CLI::IsMember({"scene", "task"}))
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "master seed")->capture_default_str();
  simulate->add_option("--out-wav", sim.out_wav, "output WAV (scene)");
  simulate->add_option("--sidecar", sim.sidecar, "ground-truth JSON (default <out-wav>.json)");
  simulate->add_option("--geometry", sim.geometry, "microphone geometry file (default 8-mic circle)");
  simulate->add_option("--drr", sim.drr, "direct-to-diffuse ratio in dB, or inf / -inf")->capture_default_str();
  simulate->add_option("--azimuth", sim.azimuth, "direct-path azimuth (rad)")->capture_default_str();
  simulate->add_option("--elevation", sim.elevation, "direct-path elevation (rad)")->capture_default_str();
  simulate->add_option("--duration", sim.duration, "seconds")->capture_default_str();
  simulate->add_option("--sample-rate", sim.sample_rate, "Hz")->capture_default_str();
  simulate->add_option("--n-directions", sim.n_directions, "plane waves in the diffuse field")
      ->capture_default_str();
  simulate->add_option("--encoding", sim.encoding, "float32 or pcm16")
      ->check(CLI::IsMember({"float32", "pcm16"}))
      ->capture_default_str();
  simulate->add_option("--out-dir", sim.out_dir, "output directory (task)");
  simulate->add_option("--train-frames", sim.train_frames, "clean training frames (task)")->capture_default_str();
  simulate->add_option("--test-frames", sim.test_frames, "noisy test frames (task)")->capture_default_str();

  cdrud::cli::ExtractArgs ext;
  CLI::App* extract = AddCommand(app, "extract", "compute 72-dim frames and diffuseness variances", echo);
  extract->add_option("--wav", ext.wav, "multichannel input")->required();
  extract->add_option("--geometry", ext.geometry, "microphone geometry file (default 8-mic circle)");
  extract->add_option("--out", ext.out, "frame file (T x 72)")->required();
  extract->add_option("--out-var", ext.out_var, "variance file (T x 24, default <out>.var)");
  extract->add_option("--out-spliced", ext.out_spliced, "optional spliced classifier input");
  extract->add_option("--dft-length", ext.dft_length)->capture_default_str();
  extract->add_option("--hop", ext.hop)->capture_default_str();
  extract->add_option("--window", ext.window)
      ->check(CLI::IsMember({"sqrthann", "hann", "rect"}))
      ->capture_default_str();
  extract->add_option("--lambda", ext.lambda, "coherence forgetting factor")->capture_default_str();
  extract->add_option("--var-scale", ext.var_scale, "cross-pair variance scale")->capture_default_str();
  extract->add_option("--cdr-max", ext.cdr_max)->capture_default_str();
  extract->add_option("--lobes", ext.lobes, "negative diffuse-coherence lobes: clip or abs")
      ->check(CLI::IsMember({"clip", "abs"}))
      ->capture_default_str();
  extract->add_option("--look-azimuth", ext.look_azimuth, "beamformer look direction (rad)")
      ->capture_default_str();
  extract->add_option("--look-elevation", ext.look_elevation)->capture_default_str();
  extract->add_flag("--deltas-before-mvn", ext.deltas_before_mvn, "take deltas of the unnormalized logmelspec");
  extract->add_option("--context", ext.context, "splice context for --out-spliced")->capture_default_str();

  cdrud::cli::TrainArgs tr;
  CLI::App* train = AddCommand(app, "train", "train a sigmoid MLP with softmax output", echo);
  train->add_option("--features", tr.features, "feature files (72-dim frames or spliced rows)")
      ->required()
      ->take_all();
  train->add_option("--labels", tr.labels, "label files, one per feature file")->required()->take_all();
  train->add_option("--out", tr.out, "model file")->required();
  train->add_option("--context", tr.context, "splice context for unspliced inputs")->capture_default_str();
  train->add_option("--hidden", tr.hidden, "hidden layer sizes")->delimiter(',')->take_all()->capture_default_str();
  train->add_option("--epochs", tr.epochs)->capture_default_str();
  train->add_option("--batch-size", tr.batch_size)->capture_default_str();
  train->add_option("--lr", tr.learning_rate)->capture_default_str();
  train->add_option("--momentum", tr.momentum)->capture_default_str();
  train->add_option("--seed", tr.seed)->capture_default_str();

  cdrud::cli::DecodeArgs dec;
  CLI::App* decode = AddCommand(app, "decode", "frame posteriors with optional uncertainty decoding", echo);
  decode->add_option("--features", dec.features, "frame file (T x 72)")->required();
  decode->add_option("--variances", dec.variances, "variance file (T x 24)")->required();
  decode->add_option("--model", dec.model)->required();
  decode->add_option("--out", dec.out, "posterior file")->required();
  decode->add_option("--labels", dec.labels, "optional labels for an accuracy report");
  decode->add_option("--report", dec.report, "JSON report (needs --labels)");
  decode->add_option("--report-csv", dec.report_csv, "CSV report (needs --labels)");
  decode->add_option("--mode", dec.mode)
      ->check(CLI::IsMember({"baseline", "arithmetic", "weighted"}))
      ->capture_default_str();
  decode->add_option("--num-samples", dec.num_samples, "samples per frame (ignored by baseline)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decode->add_option("--clip", dec.clip)->check(CLI::IsMember({"none", "range"}))->capture_default_str();
  decode->add_option("--seed", dec.seed)->capture_default_str();
  decode->add_option("--jobs", dec.jobs)->check(CLI::PositiveNumber)->capture_default_str();

  cdrud::cli::EvalArgs ev;
  CLI::App* eval = AddCommand(app, "eval", "frame accuracy per decode mode", echo);
  eval->add_option("--features", ev.features)->required()->take_all();
  eval->add_option("--variances", ev.variances)->required()->take_all();
  eval->add_option("--labels", ev.labels)->required()->take_all();
  eval->add_option("--model", ev.model)->required();
  eval->add_option("--report", ev.report, "JSON report");
  eval->add_option("--report-csv", ev.report_csv, "CSV report");
  eval->add_option("--modes", ev.modes)
      ->delimiter(',')
      ->take_all()
      ->check(CLI::IsMember({"baseline", "arithmetic", "weighted"}))
      ->capture_default_str();
  eval->add_option("--num-samples", ev.num_samples)->check(CLI::PositiveNumber)->capture_default_str();
  eval->add_option("--clip", ev.clip)->check(CLI::IsMember({"none", "range"}))->capture_default_str();
  eval->add_option("--seed", ev.seed)->capture_default_str();
  eval->add_option("--jobs", ev.jobs)->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> args(argv, argv + argc);
  try {
    if (args.size() > 2 && args[1].rfind("-", 0) != 0) {
      std::vector<std::string> rest(args.begin() + 2, args.end());
      rest = cdrud::cli::ExpandConfigFiles(rest);
      args.resize(2);
      args.insert(args.end(), rest.begin(), rest.end());
    }
  } catch (const cdrud::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cdrud::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) {
      EchoConfig(*simulate, echo);
      cdrud::cli::RunSimulate(sim);
    } else if (*extract) {
      EchoConfig(*extract, echo);
      cdrud::cli::RunExtract(ext);
    } else if (*train) {
      EchoConfig(*train, echo);
      cdrud::cli::RunTrain(tr);
    } else if (*decode) {
      EchoConfig(*decode, echo);
      cdrud::cli::RunDecode(dec);
    } else if (*eval) {
      EchoConfig(*eval, echo);
      cdrud::cli::RunEval(ev);
    }
  } catch (const cdrud::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cdrud::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const cdrud::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
