#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dnsmos/features.hpp"
#include "dnsmos/tensor.hpp"

namespace dnsmos::nnet {

inline constexpr char kArchVersion[] = "dnsmos-cnn-v1";
inline constexpr int64_t kDnsmosParamCount = 45697;
inline constexpr double kDropoutRate = 0.3;

enum class LayerKind : uint32_t {
  Conv3x3 = 1,      // stride 1, same padding
  ReLU = 2,
  MaxPool2x2 = 3,   // stride 2, floor semantics
  Dropout = 4,      // inverted scaling, train mode only
  GlobalMaxPool = 5,
  Dense = 6,
};

template <typename Real>
struct LayerT {
  LayerKind kind;
  TensorT<Real> kernel;  // Conv: [3,3,in,out]; Dense: [in,out]
  TensorT<Real> bias;    // [out]
  double rate = 0.0;     // Dropout keep-rate complement
};

template <typename Real>
struct NetworkT {
  std::vector<LayerT<Real>> layers;
  std::string arch_version;
  // Bumped on every parameter mutation; traces record it so a backward pass
  // against a modified network is rejected as stale.
  uint64_t revision = 0;

  int64_t param_count() const;
};

using Network = NetworkT<float>;

// The prediction CNN: 3x(conv32-relu-pool-dropout), conv64-relu, global max
// pool, two relu dense layers and a linear head.
template <typename Real>
NetworkT<Real> make_dnsmos_network(uint64_t init_seed);

// He-style uniform fan-in init, zero biases. Used for surrogate test nets.
template <typename Real>
void init_network(NetworkT<Real>& net, uint64_t seed);

template <typename Real>
NetworkT<double> widen(const NetworkT<Real>& net);

enum class Mode { Train, Eval };

template <typename Real>
struct ItemTraceT {
  // Output of each layer; in-place layers share storage with their input.
  std::vector<std::shared_ptr<TensorT<Real>>> outputs;
  std::vector<std::vector<int32_t>> pool_argmax;   // per pool layer output element
  std::vector<std::vector<uint8_t>> dropout_mask;  // 1 = kept
};

template <typename Real>
struct ForwardTraceT {
  Mode mode = Mode::Eval;
  uint64_t seed = 0;
  uint64_t net_revision = 0;
  TensorT<Real> input;  // [B,H,W,C]
  std::vector<ItemTraceT<Real>> items;
};

template <typename Real>
struct ForwardResultT {
  std::vector<Real> predictions;  // [B]
  ForwardTraceT<Real> trace;
};

// Gradient accumulation is always double; the per-layer entries mirror the
// network's parameter shapes (empty for parameterless layers).
struct Gradients {
  std::vector<TensorT<double>> kernel;
  std::vector<TensorT<double>> bias;
};

struct AdamState {
  int64_t step = 0;
  std::vector<TensorT<double>> m, v;
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename Real>
AdamState make_adam_state(const NetworkT<Real>& net, double lr);

// Forward over a batch [B,H,W,C]. Dropout masks derive deterministically from
// (rng_seed, item index, layer index), so results are independent of any
// parallel execution order.
template <typename Real>
ForwardResultT<Real> forward(const NetworkT<Real>& net, const TensorT<Real>& batch, Mode mode,
                             uint64_t rng_seed);

// Single-item forward used by the streaming training loop; `trace` may be
// null in eval mode.
template <typename Real>
Real forward_item(const NetworkT<Real>& net, const Real* input, int h, int w, int c, Mode mode,
                  uint64_t item_seed, ItemTraceT<Real>* trace);

double mse_loss(std::span<const double> pred, std::span<const double> target);

// Exact reverse-mode gradients of mse_loss(pred, target) w.r.t. every
// parameter. Max pools route to the first-occurring argmax; ReLU passes
// nothing at inputs <= 0; dropout reuses the forward mask.
template <typename Real>
Gradients backward(const NetworkT<Real>& net, const ForwardTraceT<Real>& trace,
                   std::span<const double> targets);

template <typename Real>
void adam_step(NetworkT<Real>& net, const Gradients& grads, AdamState& state);

struct Sample {
  const features::FeatureMatrix* features = nullptr;
  double target = 0.0;
};

struct FitConfig {
  int batch_size = 32;
  int epochs = 100;
  uint64_t seed = 0;
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int jobs = 0;  // 0 = hardware concurrency
  // "trained until the loss saturated": stop once the relative improvement
  // over a 5-epoch window drops below 1e-4.
  double saturation_rel_tol = 1e-4;
  int saturation_window = 5;
};

struct FitResult {
  std::vector<double> epoch_loss;  // mean training loss per epoch
  bool early_stopped = false;
};

FitResult fit(Network& net, std::span<const Sample> dataset, const FitConfig& config);

struct PredictOptions {
  bool clamp = false;  // reporting-time clamp to [1,5]
  int jobs = 0;
};

std::vector<double> predict_batch(const Network& net,
                                  std::span<const features::FeatureMatrix* const> features,
                                  const PredictOptions& options = {});

void write_loss_history_csv(const std::string& path, const FitResult& result);

// Builds a [B,900,120,1] input tensor from feature matrices.
template <typename Real>
TensorT<Real> feature_batch(std::span<const features::FeatureMatrix* const> features);

}  // namespace dnsmos::nnet
