// Copyright 2026 The Speller Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speller/dictionary.hpp"
#include "speller/features.hpp"
#include "speller/suggester.hpp"

namespace speller {

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> bias;

  bool operator==(const DenseLayer&) const = default;
};

struct BatchNormLayer {
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> running_mean;
  std::vector<double> running_var;

  bool operator==(const BatchNormLayer&) const = default;
};

/// Five fully connected layers: four hidden blocks of
/// affine -> batch norm -> ReLU -> dropout, then affine -> sigmoid.
struct MlpModel {
  static constexpr int kFormatVersion = 1;
  static constexpr std::size_t kLayerCount = 5;

  std::vector<std::size_t> layer_dims;  // input, 4 hidden widths, 1
  std::vector<DenseLayer> layers;
  std::vector<BatchNormLayer> norms;  // one per hidden layer
  double dropout_rate = 0.2;
  double batch_norm_epsilon = 1e-8;
  double batch_norm_momentum = 0.1;
  FeatureSchema schema;

  // He-initialized weights, unit gamma, zero beta, unit running variance.
  static MlpModel create(const FeatureSchema& schema,
                         const std::vector<std::size_t>& hidden_widths,
                         double dropout_rate, std::mt19937_64& rng);

  std::size_t input_dimension() const { return layer_dims.front(); }

  // Throws ModelError when any structural or numeric invariant fails.
  void validate() const;

  bool operator==(const MlpModel&) const = default;
};

enum class ForwardMode { kTrain, kInfer };

// Single-vector inference. Deterministic and side-effect free.
double forward(const MlpModel& model, std::span<const double> features);

// Batched forward over `rows` (batch x input_dimension, row-major). In train
// mode batch statistics normalize each hidden layer and dropout is drawn from
// `rng` when given (no rng means dropout off); the model is never mutated.
std::vector<double> forward_batch(const MlpModel& model,
                                  std::span<const double> rows,
                                  std::size_t batch, ForwardMode mode,
                                  std::mt19937_64* rng = nullptr);

double forward(const MlpModel& model, const FeatureVector& features,
               ForwardMode mode = ForwardMode::kInfer);

// Parameters in a fixed order: per layer weights then bias, then per
// hidden layer gamma then beta. Running statistics are not parameters.
std::vector<double> flatten_parameters(const MlpModel& model);
void assign_parameters(MlpModel& model, std::span<const double> flat);

struct LossGradient {
  double loss = 0;
  std::vector<double> gradient;  // flatten_parameters order
  // Per hidden layer batch mean/variance of the pre-normalization
  // activations, for running-statistics updates.
  std::vector<std::vector<double>> batch_mean;
  std::vector<std::vector<double>> batch_var;
  // Per hidden layer normalized activations (batch x width), before
  // gamma/beta.
  std::vector<std::vector<double>> normalized;
};

// Mean binary cross-entropy over the batch in train mode, with its exact
// gradient. `rng` draws dropout masks; pass nullptr to disable dropout.
LossGradient loss_and_gradient(const MlpModel& model,
                               std::span<const double> rows,
                               std::span<const int> labels,
                               std::mt19937_64* rng);

struct TrainingExample {
  FeatureVector features;
  int label = 0;  // 1 = gold correction
};

struct TrainHyper {
  int epochs = 20;
  std::size_t batch_size = 64;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double dropout_rate = 0.2;
  std::uint64_t seed = 0;
  std::vector<std::size_t> hidden_widths = {64, 64, 32, 16};
  // Replace the moving-average statistics with population statistics taken
  // with dropout off once training ends.
  bool recalibrate_batch_norm = true;
};

// Mini-batch SGD with momentum on binary cross-entropy.
MlpModel train(const std::vector<TrainingExample>& dataset,
               const TrainHyper& hyper, const FeatureSchema& schema = {});

// Scores every candidate (infer mode) and sorts by score descending; ties go
// to the higher word count, then to the lexicographically smaller term.
std::vector<Candidate> rank(const MlpModel& model,
                            std::vector<Candidate> candidates,
                            const RequestContext& context,
                            const FrequencyDictionary& dict,
                            std::string_view input_token);

void sort_by_score(std::vector<Candidate>& candidates);

// Sets each layer's running mean and (unbiased) variance to the statistics
// of its pre-activations over `rows`, layer by layer in infer mode. Dropout
// during training shifts the variance seen by later layers; this removes
// that shift from the frozen model.
void recalibrate_batch_norm(MlpModel& model, std::span<const double> rows,
                            std::size_t count);

void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

std::string model_to_json(const MlpModel& model);
MlpModel model_from_json(std::string_view text);

}  // namespace speller
