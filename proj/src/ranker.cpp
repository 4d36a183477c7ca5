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

#include "speller/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "speller/errors.hpp"

namespace speller {
namespace {

using json = nlohmann::json;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Numerically stable -[y log s(z) + (1-y) log(1-s(z))].
double logistic_loss(double z, int y) {
  return std::max(z, 0.0) - y * z + std::log1p(std::exp(-std::abs(z)));
}

void affine(const DenseLayer& layer, std::span<const double> in,
            std::size_t batch, std::vector<double>& out) {
  out.assign(batch * layer.outputs, 0.0);
  for (std::size_t b = 0; b < batch; ++b) {
    const double* x = in.data() + b * layer.inputs;
    double* y = out.data() + b * layer.outputs;
    for (std::size_t j = 0; j < layer.outputs; ++j) {
      const double* w = layer.weights.data() + j * layer.inputs;
      double acc = layer.bias[j];
      for (std::size_t k = 0; k < layer.inputs; ++k) acc += w[k] * x[k];
      y[j] = acc;
    }
  }
}

struct HiddenCache {
  std::vector<double> input;       // batch x inputs
  std::vector<double> mean;        // outputs
  std::vector<double> var;         // outputs
  std::vector<double> normalized;  // batch x outputs
  std::vector<double> scaled;      // gamma * normalized + beta
  std::vector<double> mask;        // dropout scale per unit, empty if off
  std::vector<double> output;      // batch x outputs
};

struct BatchCache {
  std::vector<HiddenCache> hidden;
  std::vector<double> last_input;
  std::vector<double> logits;
};

void check_rows(const MlpModel& model, std::span<const double> rows,
                std::size_t batch) {
  if (batch == 0 || rows.size() != batch * model.input_dimension()) {
    throw ModelError("feature dimension mismatch: expected " +
                     std::to_string(model.input_dimension()) + " per row");
  }
}

void run_batch(const MlpModel& model, std::span<const double> rows,
               std::size_t batch, ForwardMode mode, std::mt19937_64* rng,
               BatchCache& cache) {
  check_rows(model, rows, batch);
  const std::size_t hidden = model.norms.size();
  cache.hidden.resize(hidden);
  std::vector<double> current(rows.begin(), rows.end());
  std::vector<double> z;
  const bool dropout =
      mode == ForwardMode::kTrain && rng != nullptr && model.dropout_rate > 0;
  std::bernoulli_distribution keep(1.0 - model.dropout_rate);
  const double keep_scale = 1.0 / (1.0 - model.dropout_rate);

  for (std::size_t l = 0; l < hidden; ++l) {
    const DenseLayer& layer = model.layers[l];
    const BatchNormLayer& norm = model.norms[l];
    HiddenCache& c = cache.hidden[l];
    c.input = current;
    affine(layer, current, batch, z);
    const std::size_t width = layer.outputs;
    c.mean.assign(width, 0.0);
    c.var.assign(width, 0.0);
    if (mode == ForwardMode::kTrain) {
      for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t j = 0; j < width; ++j) c.mean[j] += z[b * width + j];
      }
      for (auto& m : c.mean) m /= static_cast<double>(batch);
      for (std::size_t b = 0; b < batch; ++b) {
        for (std::size_t j = 0; j < width; ++j) {
          const double d = z[b * width + j] - c.mean[j];
          c.var[j] += d * d;
        }
      }
      for (auto& v : c.var) v /= static_cast<double>(batch);
    } else {
      c.mean = norm.running_mean;
      c.var = norm.running_var;
    }
    c.normalized.resize(batch * width);
    c.scaled.resize(batch * width);
    c.output.resize(batch * width);
    c.mask.clear();
    if (dropout) c.mask.resize(batch * width);
    for (std::size_t j = 0; j < width; ++j) {
      const double inv_std = 1.0 / std::sqrt(c.var[j] + model.batch_norm_epsilon);
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t i = b * width + j;
        c.normalized[i] = (z[i] - c.mean[j]) * inv_std;
        c.scaled[i] = norm.gamma[j] * c.normalized[i] + norm.beta[j];
      }
    }
    for (std::size_t i = 0; i < batch * width; ++i) {
      double a = std::max(c.scaled[i], 0.0);
      if (dropout) {
        c.mask[i] = keep(*rng) ? keep_scale : 0.0;
        a *= c.mask[i];
      }
      c.output[i] = a;
    }
    current = c.output;
  }
  cache.last_input = current;
  affine(model.layers.back(), current, batch, cache.logits);
}

std::vector<double> dense_rows(const std::vector<TrainingExample>& data,
                               std::size_t dim) {
  std::vector<double> rows(data.size() * dim);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& f = data[i].features;
    if (4 + f.locale_onehot.size() + f.application_onehot.size() + 1 != dim) {
      throw ModelError("training example has the wrong feature dimension");
    }
    f.write_dense(std::span<double>(rows.data() + i * dim, dim));
  }
  return rows;
}

json doubles(const std::vector<double>& v) { return json(v); }

std::vector<double> read_doubles(const json& j, std::size_t expected,
                                 const char* what) {
  if (!j.is_array() || j.size() != expected) {
    throw LoadError(std::string("model field '") + what + "' has wrong size");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw LoadError(std::string("model field '") + what + "' is not numeric");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

MlpModel MlpModel::create(const FeatureSchema& schema,
                          const std::vector<std::size_t>& hidden_widths,
                          double dropout_rate, std::mt19937_64& rng) {
  if (hidden_widths.size() != kLayerCount - 1) {
    throw ModelError("the ranker needs exactly 4 hidden layers");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ModelError("dropout rate must lie in [0, 1)");
  }
  MlpModel m;
  m.schema = schema;
  m.dropout_rate = dropout_rate;
  m.layer_dims.push_back(schema.dimension());
  for (auto w : hidden_widths) m.layer_dims.push_back(w);
  m.layer_dims.push_back(1);
  for (std::size_t l = 0; l < kLayerCount; ++l) {
    DenseLayer layer;
    layer.inputs = m.layer_dims[l];
    layer.outputs = m.layer_dims[l + 1];
    const bool last = l + 1 == kLayerCount;
    const double stddev =
        std::sqrt((last ? 1.0 : 2.0) / static_cast<double>(layer.inputs));
    std::normal_distribution<double> init(0.0, stddev);
    layer.weights.resize(layer.inputs * layer.outputs);
    for (auto& w : layer.weights) w = init(rng);
    layer.bias.assign(layer.outputs, 0.0);
    m.layers.push_back(std::move(layer));
    if (!last) {
      const std::size_t width = m.layer_dims[l + 1];
      m.norms.push_back({std::vector<double>(width, 1.0),
                         std::vector<double>(width, 0.0),
                         std::vector<double>(width, 0.0),
                         std::vector<double>(width, 1.0)});
    }
  }
  return m;
}

void MlpModel::validate() const {
  if (layer_dims.size() != kLayerCount + 1 || layers.size() != kLayerCount ||
      norms.size() != kLayerCount - 1) {
    throw ModelError("model must have exactly 5 fully connected layers");
  }
  if (layer_dims.back() != 1) throw ModelError("model output must be scalar");
  if (schema.dimension() != layer_dims.front()) {
    throw ModelError("feature schema dimension " +
                     std::to_string(schema.dimension()) +
                     " does not match model input " +
                     std::to_string(layer_dims.front()));
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ModelError("dropout rate must lie in [0, 1)");
  }
  if (!(batch_norm_epsilon > 0.0) || !std::isfinite(batch_norm_epsilon)) {
    throw ModelError("batch norm epsilon must be positive");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
  };
  for (std::size_t l = 0; l < kLayerCount; ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.inputs != layer_dims[l] || layer.outputs != layer_dims[l + 1] ||
        layer.weights.size() != layer.inputs * layer.outputs ||
        layer.bias.size() != layer.outputs) {
      throw ModelError("layer " + std::to_string(l) + " has inconsistent shape");
    }
    if (!finite(layer.weights) || !finite(layer.bias)) {
      throw ModelError("layer " + std::to_string(l) + " has non-finite values");
    }
  }
  for (std::size_t l = 0; l < norms.size(); ++l) {
    const BatchNormLayer& n = norms[l];
    const std::size_t width = layer_dims[l + 1];
    if (n.gamma.size() != width || n.beta.size() != width ||
        n.running_mean.size() != width || n.running_var.size() != width) {
      throw ModelError("batch norm " + std::to_string(l) +
                       " has inconsistent shape");
    }
    if (!finite(n.gamma) || !finite(n.beta) || !finite(n.running_mean) ||
        !finite(n.running_var)) {
      throw ModelError("batch norm " + std::to_string(l) +
                       " has non-finite values");
    }
    for (double v : n.running_var) {
      if (!(v > 0)) throw ModelError("running variance must be positive");
    }
  }
}

double forward(const MlpModel& model, std::span<const double> features) {
  if (features.size() != model.input_dimension()) {
    throw ModelError("feature dimension mismatch: expected " +
                     std::to_string(model.input_dimension()) + ", got " +
                     std::to_string(features.size()));
  }
  thread_local std::vector<double> a, b;
  a.assign(features.begin(), features.end());
  for (std::size_t l = 0; l < model.norms.size(); ++l) {
    const DenseLayer& layer = model.layers[l];
    const BatchNormLayer& norm = model.norms[l];
    affine(layer, a, 1, b);
    for (std::size_t j = 0; j < layer.outputs; ++j) {
      const double x = (b[j] - norm.running_mean[j]) /
                       std::sqrt(norm.running_var[j] + model.batch_norm_epsilon);
      b[j] = std::max(norm.gamma[j] * x + norm.beta[j], 0.0);
    }
    std::swap(a, b);
  }
  affine(model.layers.back(), a, 1, b);
  return sigmoid(b[0]);
}

double forward(const MlpModel& model, const FeatureVector& features,
               ForwardMode mode) {
  const std::vector<double> row = features.dense();
  if (mode == ForwardMode::kInfer) return forward(model, row);
  return forward_batch(model, row, 1, mode)[0];
}

std::vector<double> forward_batch(const MlpModel& model,
                                  std::span<const double> rows,
                                  std::size_t batch, ForwardMode mode,
                                  std::mt19937_64* rng) {
  BatchCache cache;
  run_batch(model, rows, batch, mode, rng, cache);
  std::vector<double> out(batch);
  for (std::size_t i = 0; i < batch; ++i) out[i] = sigmoid(cache.logits[i]);
  return out;
}

std::vector<double> flatten_parameters(const MlpModel& model) {
  std::vector<double> flat;
  for (const auto& layer : model.layers) {
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
    flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
  }
  for (const auto& norm : model.norms) {
    flat.insert(flat.end(), norm.gamma.begin(), norm.gamma.end());
    flat.insert(flat.end(), norm.beta.begin(), norm.beta.end());
  }
  return flat;
}

void assign_parameters(MlpModel& model, std::span<const double> flat) {
  std::size_t i = 0;
  auto take = [&](std::vector<double>& v) {
    if (i + v.size() > flat.size()) throw ModelError("parameter vector too short");
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(i), v.size(), v.begin());
    i += v.size();
  };
  for (auto& layer : model.layers) {
    take(layer.weights);
    take(layer.bias);
  }
  for (auto& norm : model.norms) {
    take(norm.gamma);
    take(norm.beta);
  }
  if (i != flat.size()) throw ModelError("parameter vector too long");
}

LossGradient loss_and_gradient(const MlpModel& model,
                               std::span<const double> rows,
                               std::span<const int> labels,
                               std::mt19937_64* rng) {
  const std::size_t batch = labels.size();
  BatchCache cache;
  run_batch(model, rows, batch, ForwardMode::kTrain, rng, cache);

  LossGradient out;
  const double inv_batch = 1.0 / static_cast<double>(batch);
  std::vector<double> dlogit(batch);
  for (std::size_t i = 0; i < batch; ++i) {
    out.loss += logistic_loss(cache.logits[i], labels[i]) * inv_batch;
    dlogit[i] = (sigmoid(cache.logits[i]) - labels[i]) * inv_batch;
  }

  // Gradient buffers laid out like flatten_parameters.
  std::vector<std::vector<double>> d_weights(model.layers.size());
  std::vector<std::vector<double>> d_bias(model.layers.size());
  std::vector<std::vector<double>> d_gamma(model.norms.size());
  std::vector<std::vector<double>> d_beta(model.norms.size());

  // Output layer.
  const DenseLayer& top = model.layers.back();
  d_weights.back().assign(top.weights.size(), 0.0);
  d_bias.back().assign(1, 0.0);
  std::vector<double> d_input(batch * top.inputs, 0.0);
  for (std::size_t b = 0; b < batch; ++b) {
    d_bias.back()[0] += dlogit[b];
    for (std::size_t k = 0; k < top.inputs; ++k) {
      d_weights.back()[k] += dlogit[b] * cache.last_input[b * top.inputs + k];
      d_input[b * top.inputs + k] = dlogit[b] * top.weights[k];
    }
  }

  for (std::size_t l = model.norms.size(); l-- > 0;) {
    const DenseLayer& layer = model.layers[l];
    const BatchNormLayer& norm = model.norms[l];
    const HiddenCache& c = cache.hidden[l];
    const std::size_t width = layer.outputs;

    // Through dropout and ReLU.
    std::vector<double> d_scaled(batch * width);
    for (std::size_t i = 0; i < batch * width; ++i) {
      double g = d_input[i];
      if (!c.mask.empty()) g *= c.mask[i];
      d_scaled[i] = c.scaled[i] > 0 ? g : 0.0;
    }

    // Through batch norm.
    d_gamma[l].assign(width, 0.0);
    d_beta[l].assign(width, 0.0);
    std::vector<double> d_z(batch * width);
    for (std::size_t j = 0; j < width; ++j) {
      double sum_dxhat = 0, sum_dxhat_xhat = 0;
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t i = b * width + j;
        d_gamma[l][j] += d_scaled[i] * c.normalized[i];
        d_beta[l][j] += d_scaled[i];
        const double dxhat = d_scaled[i] * norm.gamma[j];
        sum_dxhat += dxhat;
        sum_dxhat_xhat += dxhat * c.normalized[i];
      }
      const double inv_std = 1.0 / std::sqrt(c.var[j] + model.batch_norm_epsilon);
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t i = b * width + j;
        const double dxhat = d_scaled[i] * norm.gamma[j];
        d_z[i] = inv_std * inv_batch *
                 (static_cast<double>(batch) * dxhat - sum_dxhat -
                  c.normalized[i] * sum_dxhat_xhat);
      }
    }

    // Through the affine map.
    d_weights[l].assign(layer.weights.size(), 0.0);
    d_bias[l].assign(width, 0.0);
    std::vector<double> d_prev(batch * layer.inputs, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
      const double* x = c.input.data() + b * layer.inputs;
      double* dx = d_prev.data() + b * layer.inputs;
      for (std::size_t j = 0; j < width; ++j) {
        const double g = d_z[b * width + j];
        if (g == 0.0) continue;
        d_bias[l][j] += g;
        double* dw = d_weights[l].data() + j * layer.inputs;
        const double* w = layer.weights.data() + j * layer.inputs;
        for (std::size_t k = 0; k < layer.inputs; ++k) {
          dw[k] += g * x[k];
          dx[k] += g * w[k];
        }
      }
    }
    d_input = std::move(d_prev);
  }

  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    out.gradient.insert(out.gradient.end(), d_weights[l].begin(), d_weights[l].end());
    out.gradient.insert(out.gradient.end(), d_bias[l].begin(), d_bias[l].end());
  }
  for (std::size_t l = 0; l < model.norms.size(); ++l) {
    out.gradient.insert(out.gradient.end(), d_gamma[l].begin(), d_gamma[l].end());
    out.gradient.insert(out.gradient.end(), d_beta[l].begin(), d_beta[l].end());
  }
  for (auto& c : cache.hidden) {
    out.batch_mean.push_back(std::move(c.mean));
    out.batch_var.push_back(std::move(c.var));
    out.normalized.push_back(std::move(c.normalized));
  }
  return out;
}

MlpModel train(const std::vector<TrainingExample>& dataset,
               const TrainHyper& hyper, const FeatureSchema& schema) {
  if (hyper.batch_size < 2) {
    throw TrainingError("batch_size must be at least 2 for batch norm");
  }
  if (hyper.epochs < 1) throw TrainingError("epochs must be positive");
  bool has_positive = false, has_negative = false;
  for (const auto& ex : dataset) {
    if (ex.label != 0 && ex.label != 1) throw TrainingError("labels must be 0 or 1");
    (ex.label ? has_positive : has_negative) = true;
  }
  if (!has_positive || !has_negative) {
    throw TrainingError("training data must contain both labels");
  }

  std::mt19937_64 rng(hyper.seed);
  MlpModel model =
      MlpModel::create(schema, hyper.hidden_widths, hyper.dropout_rate, rng);
  const std::size_t dim = model.input_dimension();
  const std::vector<double> rows = dense_rows(dataset, dim);

  std::vector<double> params = flatten_parameters(model);
  std::vector<double> velocity(params.size(), 0.0);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> batch_rows;
  std::vector<int> batch_labels;
  const double m = model.batch_norm_momentum;

  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), start + hyper.batch_size);
      const std::size_t batch = end - start;
      if (batch < 2) continue;
      batch_rows.resize(batch * dim);
      batch_labels.resize(batch);
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t src = order[start + b];
        std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(src * dim), dim,
                    batch_rows.begin() + static_cast<std::ptrdiff_t>(b * dim));
        batch_labels[b] = dataset[src].label;
      }
      LossGradient lg = loss_and_gradient(model, batch_rows, batch_labels, &rng);
      if (!std::isfinite(lg.loss)) {
        throw TrainingError("training diverged at epoch " + std::to_string(epoch));
      }
      for (std::size_t i = 0; i < params.size(); ++i) {
        velocity[i] = hyper.momentum * velocity[i] -
                      hyper.learning_rate * lg.gradient[i];
        params[i] += velocity[i];
      }
      assign_parameters(model, params);
      const double unbias =
          static_cast<double>(batch) / static_cast<double>(batch - 1);
      for (std::size_t l = 0; l < model.norms.size(); ++l) {
        auto& norm = model.norms[l];
        for (std::size_t j = 0; j < norm.running_mean.size(); ++j) {
          norm.running_mean[j] =
              (1 - m) * norm.running_mean[j] + m * lg.batch_mean[l][j];
          norm.running_var[j] =
              (1 - m) * norm.running_var[j] + m * lg.batch_var[l][j] * unbias;
        }
      }
    }
    for (double p : params) {
      if (!std::isfinite(p)) {
        throw TrainingError("training diverged at epoch " + std::to_string(epoch));
      }
    }
  }
  if (hyper.recalibrate_batch_norm) recalibrate_batch_norm(model, rows, dataset.size());
  model.validate();
  return model;
}

void recalibrate_batch_norm(MlpModel& model, std::span<const double> rows,
                            std::size_t count) {
  const std::size_t dim = model.input_dimension();
  if (rows.size() != count * dim) throw ModelError("row buffer size mismatch");
  if (count < 2) throw ModelError("need at least two rows for batch statistics");
  constexpr std::size_t kChunk = 4096;
  std::vector<double> a, z;
  for (std::size_t l = 0; l < model.norms.size(); ++l) {
    const std::size_t width = model.layer_dims[l + 1];
    // Chan et al. pairwise merge of per-chunk mean / sum of squares.
    std::vector<double> mean(width, 0.0), m2(width, 0.0);
    std::size_t seen = 0;
    for (std::size_t start = 0; start < count; start += kChunk) {
      const std::size_t n = std::min(kChunk, count - start);
      a.assign(rows.begin() + static_cast<std::ptrdiff_t>(start * dim),
               rows.begin() + static_cast<std::ptrdiff_t>((start + n) * dim));
      for (std::size_t k = 0; k < l; ++k) {
        const auto& norm = model.norms[k];
        const std::size_t w = model.layer_dims[k + 1];
        affine(model.layers[k], a, n, z);
        for (std::size_t j = 0; j < w; ++j) {
          const double inv =
              1.0 / std::sqrt(norm.running_var[j] + model.batch_norm_epsilon);
          for (std::size_t b = 0; b < n; ++b) {
            double& v = z[b * w + j];
            v = std::max(norm.gamma[j] * (v - norm.running_mean[j]) * inv +
                             norm.beta[j],
                         0.0);
          }
        }
        std::swap(a, z);
      }
      affine(model.layers[l], a, n, z);
      for (std::size_t j = 0; j < width; ++j) {
        double chunk_mean = 0.0;
        for (std::size_t b = 0; b < n; ++b) chunk_mean += z[b * width + j];
        chunk_mean /= static_cast<double>(n);
        double chunk_m2 = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
          const double d = z[b * width + j] - chunk_mean;
          chunk_m2 += d * d;
        }
        const double total = static_cast<double>(seen + n);
        const double delta = chunk_mean - mean[j];
        mean[j] += delta * static_cast<double>(n) / total;
        m2[j] += chunk_m2 + delta * delta * static_cast<double>(seen) *
                                static_cast<double>(n) / total;
      }
      seen += n;
    }
    auto& norm = model.norms[l];
    for (std::size_t j = 0; j < width; ++j) {
      norm.running_mean[j] = mean[j];
      // A unit that is constant over the data keeps a positive variance.
      norm.running_var[j] =
          std::max(m2[j] / static_cast<double>(count - 1), model.batch_norm_epsilon);
    }
  }
}

void sort_by_score(std::vector<Candidate>& candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              const double sa = a.score.value_or(0.0);
              const double sb = b.score.value_or(0.0);
              if (sa != sb) return sa > sb;
              if (a.entry.word_count != b.entry.word_count) {
                return a.entry.word_count > b.entry.word_count;
              }
              return a.term() < b.term();
            });
}

std::vector<Candidate> rank(const MlpModel& model,
                            std::vector<Candidate> candidates,
                            const RequestContext& context,
                            const FrequencyDictionary& dict,
                            std::string_view input_token) {
  std::vector<double> row(model.input_dimension());
  for (auto& c : candidates) {
    extract_features(c, context, dict, input_token, model.schema).write_dense(row);
    c.score = forward(model, row);
  }
  sort_by_score(candidates);
  return candidates;
}

std::string model_to_json(const MlpModel& model) {
  json doc;
  doc["format"] = "speller-mlp";
  doc["version"] = MlpModel::kFormatVersion;
  doc["layer_dims"] = model.layer_dims;
  doc["feature_schema"] = {
      {"names", model.schema.feature_names()},
      {"locales", model.schema.locales},
      {"applications", model.schema.applications},
      {"dimension", model.schema.dimension()},
  };
  doc["activation"] = "relu";
  doc["output"] = "sigmoid";
  doc["dropout_rate"] = model.dropout_rate;
  doc["batch_norm_epsilon"] = model.batch_norm_epsilon;
  doc["batch_norm_momentum"] = model.batch_norm_momentum;
  json layers = json::array();
  for (const auto& layer : model.layers) {
    layers.push_back({{"inputs", layer.inputs},
                      {"outputs", layer.outputs},
                      {"weights", doubles(layer.weights)},
                      {"bias", doubles(layer.bias)}});
  }
  doc["layers"] = std::move(layers);
  json norms = json::array();
  for (const auto& norm : model.norms) {
    norms.push_back({{"gamma", doubles(norm.gamma)},
                     {"beta", doubles(norm.beta)},
                     {"running_mean", doubles(norm.running_mean)},
                     {"running_var", doubles(norm.running_var)}});
  }
  doc["batch_norm"] = std::move(norms);
  return doc.dump(1);
}

MlpModel model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw LoadError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format") != "speller-mlp") throw LoadError("not a ranker model file");
    if (doc.at("version") != MlpModel::kFormatVersion) {
      throw LoadError("unsupported model version " + doc.at("version").dump());
    }
    MlpModel m;
    m.layer_dims = doc.at("layer_dims").get<std::vector<std::size_t>>();
    const json& schema = doc.at("feature_schema");
    m.schema.locales = schema.at("locales").get<std::vector<std::string>>();
    m.schema.applications =
        schema.at("applications").get<std::vector<std::string>>();
    if (schema.at("names").get<std::vector<std::string>>() !=
            m.schema.feature_names() ||
        schema.at("dimension").get<std::size_t>() != m.schema.dimension()) {
      throw LoadError("feature schema does not match this build's feature order");
    }
    if (m.layer_dims.size() != MlpModel::kLayerCount + 1) {
      throw LoadError("model must have exactly 5 fully connected layers");
    }
    if (m.layer_dims.front() != m.schema.dimension()) {
      throw LoadError("model input dimension does not match its feature schema");
    }
    m.dropout_rate = doc.at("dropout_rate").get<double>();
    m.batch_norm_epsilon = doc.at("batch_norm_epsilon").get<double>();
    m.batch_norm_momentum = doc.at("batch_norm_momentum").get<double>();
    const json& layers = doc.at("layers");
    const json& norms = doc.at("batch_norm");
    if (!layers.is_array() || layers.size() != MlpModel::kLayerCount ||
        !norms.is_array() || norms.size() != MlpModel::kLayerCount - 1) {
      throw LoadError("model must have exactly 5 fully connected layers");
    }
    for (std::size_t l = 0; l < MlpModel::kLayerCount; ++l) {
      DenseLayer layer;
      layer.inputs = m.layer_dims[l];
      layer.outputs = m.layer_dims[l + 1];
      if (layers[l].at("inputs") != layer.inputs ||
          layers[l].at("outputs") != layer.outputs) {
        throw LoadError("layer " + std::to_string(l) + " shape mismatch");
      }
      layer.weights = read_doubles(layers[l].at("weights"),
                                   layer.inputs * layer.outputs, "weights");
      layer.bias = read_doubles(layers[l].at("bias"), layer.outputs, "bias");
      m.layers.push_back(std::move(layer));
    }
    for (std::size_t l = 0; l + 1 < MlpModel::kLayerCount; ++l) {
      const std::size_t width = m.layer_dims[l + 1];
      BatchNormLayer norm;
      norm.gamma = read_doubles(norms[l].at("gamma"), width, "gamma");
      norm.beta = read_doubles(norms[l].at("beta"), width, "beta");
      norm.running_mean =
          read_doubles(norms[l].at("running_mean"), width, "running_mean");
      norm.running_var =
          read_doubles(norms[l].at("running_var"), width, "running_var");
      m.norms.push_back(std::move(norm));
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed model file: ") + e.what());
  } catch (const ModelError& e) {
    throw LoadError(std::string("invalid model: ") + e.what());
  }
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  const std::string text = model_to_json(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path.string() + ": cannot write model");
  out << text << '\n';
  if (!out) throw ConfigError(path.string() + ": write failed");
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string() + ": cannot open model file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return model_from_json(buffer.str());
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

}  // namespace speller
