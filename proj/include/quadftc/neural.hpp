#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadftc/rng.hpp"

namespace quadftc {

enum class Activation { ReLU, Sigmoid, Linear };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};
struct ArchitectureMismatch : std::runtime_error {
    explicit ArchitectureMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// One affine map plus activation. Weights are row-major (out x in).
struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    Activation act = Activation::Linear;
    std::vector<double> weights;  // out*in, row-major
    std::vector<double> bias;     // out
};

// Plain feed-forward stack of dense layers; consecutive dimensions chain.
struct DenseNetwork {
    std::vector<DenseLayer> layers;

    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in; }
    std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().out; }
    std::size_t parameter_count() const;
};

// Uniform +-1/sqrt(fan_in) init per layer; the final layer is additionally
// scaled by final_layer_scale (1.0 = untouched).
DenseNetwork make_network(const std::vector<std::size_t>& dims,
                          const std::vector<Activation>& acts, SplitMix64& rng,
                          double final_layer_scale = 1.0);

// Forward pass; pure, never mutates the network.
std::vector<double> forward(const DenseNetwork& net, const std::vector<double>& input);

// Per-layer parameter gradients plus the gradient of the scalar loss
// upstream_grad . output with respect to the network input (the actor update
// chains through the critic via input_grad).
struct GradientSet {
    struct LayerGrad {
        std::vector<double> weights;
        std::vector<double> bias;
    };
    std::vector<LayerGrad> layers;
    std::vector<double> input_grad;

    void accumulate(const GradientSet& other, double scale);
    void scale_all(double s);
};

GradientSet zero_gradients(const DenseNetwork& net);

// Exact reverse-mode gradients of (upstream_grad . output).
GradientSet backward(const DenseNetwork& net, const std::vector<double>& input,
                     const std::vector<double>& upstream_grad);

// Same gradients scaled by `scale` and added into an existing accumulator;
// the minibatch loops use this to avoid per-sample allocation. When
// input_grad is non-null it receives d(loss)/d(input) for this sample alone.
void backward_accumulate(const DenseNetwork& net, const std::vector<double>& input,
                         const std::vector<double>& upstream_grad, double scale,
                         GradientSet& grads, std::vector<double>* input_grad = nullptr);

// d(upstream_grad . output)/d(input) alone, skipping the parameter-gradient
// work (the actor update only needs the critic's action sensitivity).
void input_gradient(const DenseNetwork& net, const std::vector<double>& input,
                    const std::vector<double>& upstream_grad, std::vector<double>& out);

// Adaptive-moment optimizer state; moments mirror the parameter layout.
struct OptimizerState {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step_count = 0;
    struct LayerMoments {
        std::vector<double> m_w, v_w, m_b, v_b;
    };
    std::vector<LayerMoments> layers;
};

OptimizerState make_optimizer(const DenseNetwork& net, double learning_rate);

// One bias-corrected adaptive-moment descent step, in place.
void optimizer_step(DenseNetwork& net, const GradientSet& grads, OptimizerState& opt);

// target <- tau*online + (1-tau)*target, elementwise over all parameters.
void soft_update(DenseNetwork& target, const DenseNetwork& online, double tau);

// Plain-text checkpoint, layout:
//   line 1:  "quadftc-net 1"
//   line 2:  layer count
//   then per layer: "<in> <out> <activation>" followed by out*in weight
//   values (row-major) and out bias values, whitespace-separated, printed
//   with %.17g so that reload is bit-exact.
void save_network(const DenseNetwork& net, const std::string& path);
DenseNetwork load_network(const std::string& path);

} // namespace quadftc
