#include "quadftc/neural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace quadftc {

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::ReLU: return "relu";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Linear: return "linear";
    }
    return "linear";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::ReLU;
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "linear") return Activation::Linear;
    throw ArchitectureMismatch("unknown activation: " + name);
}

std::size_t DenseNetwork::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.bias.size();
    return n;
}

DenseNetwork make_network(const std::vector<std::size_t>& dims,
                          const std::vector<Activation>& acts, SplitMix64& rng,
                          double final_layer_scale) {
    if (dims.size() < 2 || acts.size() != dims.size() - 1)
        throw ArchitectureMismatch("need n>=2 dims and n-1 activations");
    DenseNetwork net;
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
        DenseLayer layer;
        layer.in = dims[k];
        layer.out = dims[k + 1];
        layer.act = acts[k];
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
        const double scale = (k + 2 == dims.size()) ? final_layer_scale : 1.0;
        layer.weights.resize(layer.out * layer.in);
        layer.bias.resize(layer.out);
        for (auto& w : layer.weights) w = scale * rng.uniform(-bound, bound);
        for (auto& b : layer.bias) b = scale * rng.uniform(-bound, bound);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

namespace {

// Dot product with four independent accumulators: a fixed reassociation that
// the compiler can vectorize without changing results between runs.
double dot4(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        s0 += a[j] * b[j];
        s1 += a[j + 1] * b[j + 1];
        s2 += a[j + 2] * b[j + 2];
        s3 += a[j + 3] * b[j + 3];
    }
    for (; j < n; ++j) s0 += a[j] * b[j];
    return ((s0 + s1) + (s2 + s3));
}

double apply_act(Activation a, double x) {
    switch (a) {
        case Activation::ReLU: return x > 0.0 ? x : 0.0;
        case Activation::Sigmoid: {
            // Stable form, pinned to the open interval (0,1) in double
            // precision even for saturating inputs.
            double y;
            if (x >= 0.0) {
                y = 1.0 / (1.0 + std::exp(-x));
            } else {
                const double e = std::exp(x);
                y = e / (1.0 + e);
            }
            constexpr double lo = std::numeric_limits<double>::min();
            constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
            return std::clamp(y, lo, hi);
        }
        case Activation::Linear: return x;
    }
    return x;
}

// Derivative expressed through the activation output y.
double act_grad_from_output(Activation a, double y) {
    switch (a) {
        case Activation::ReLU: return y > 0.0 ? 1.0 : 0.0;
        case Activation::Sigmoid: return y * (1.0 - y);
        case Activation::Linear: return 1.0;
    }
    return 1.0;
}

} // namespace

std::vector<double> forward(const DenseNetwork& net, const std::vector<double>& input) {
    if (input.size() != net.input_dim())
        throw ShapeMismatch("forward: input size " + std::to_string(input.size()) +
                            " != " + std::to_string(net.input_dim()));
    thread_local std::vector<double> x, y;
    x = input;
    for (const auto& layer : net.layers) {
        y.assign(layer.out, 0.0);
        for (std::size_t i = 0; i < layer.out; ++i) {
            const double* wrow = layer.weights.data() + i * layer.in;
            y[i] = apply_act(layer.act, layer.bias[i] + dot4(wrow, x.data(), layer.in));
        }
        x.swap(y);
    }
    return x;
}

void GradientSet::accumulate(const GradientSet& other, double scale) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t i = 0; i < layers[l].weights.size(); ++i)
            layers[l].weights[i] += scale * other.layers[l].weights[i];
        for (std::size_t i = 0; i < layers[l].bias.size(); ++i)
            layers[l].bias[i] += scale * other.layers[l].bias[i];
    }
    for (std::size_t i = 0; i < input_grad.size(); ++i)
        input_grad[i] += scale * other.input_grad[i];
}

void GradientSet::scale_all(double s) {
    for (auto& l : layers) {
        for (auto& w : l.weights) w *= s;
        for (auto& b : l.bias) b *= s;
    }
    for (auto& g : input_grad) g *= s;
}

GradientSet zero_gradients(const DenseNetwork& net) {
    GradientSet g;
    g.layers.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        g.layers[l].weights.assign(net.layers[l].weights.size(), 0.0);
        g.layers[l].bias.assign(net.layers[l].bias.size(), 0.0);
    }
    g.input_grad.assign(net.input_dim(), 0.0);
    return g;
}

void backward_accumulate(const DenseNetwork& net, const std::vector<double>& input,
                         const std::vector<double>& upstream_grad, double scale,
                         GradientSet& grads, std::vector<double>* input_grad) {
    if (input.size() != net.input_dim())
        throw ShapeMismatch("backward: bad input size");
    if (upstream_grad.size() != net.output_dim())
        throw ShapeMismatch("backward: bad upstream size");
    if (grads.layers.size() != net.layers.size())
        throw ShapeMismatch("backward: gradient accumulator layer count");

    // Forward pass keeping each layer's activation output. The caches are
    // reused across calls; only their sizes are touched after warm-up.
    thread_local std::vector<std::vector<double>> outputs;
    thread_local std::vector<double> delta, next_delta;
    outputs.resize(net.layers.size());

    const std::vector<double>* x = &input;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        outputs[l].assign(layer.out, 0.0);
        for (std::size_t i = 0; i < layer.out; ++i) {
            const double* wrow = layer.weights.data() + i * layer.in;
            outputs[l][i] =
                apply_act(layer.act, layer.bias[i] + dot4(wrow, x->data(), layer.in));
        }
        x = &outputs[l];
    }

    delta = upstream_grad;  // d(loss)/d(layer output)
    for (std::size_t li = net.layers.size(); li-- > 0;) {
        const auto& layer = net.layers[li];
        const std::vector<double>& in_vec = (li == 0) ? input : outputs[li - 1];
        next_delta.assign(layer.in, 0.0);
        double* gb = grads.layers[li].bias.data();
        for (std::size_t i = 0; i < layer.out; ++i) {
            const double dz = delta[i] * act_grad_from_output(layer.act, outputs[li][i]);
            gb[i] += scale * dz;
            const double sdz = scale * dz;
            double* gw = grads.layers[li].weights.data() + i * layer.in;
            const double* wrow = layer.weights.data() + i * layer.in;
            for (std::size_t j = 0; j < layer.in; ++j) {
                gw[j] += sdz * in_vec[j];
                next_delta[j] += dz * wrow[j];
            }
        }
        delta.swap(next_delta);
    }
    if (input_grad) *input_grad = delta;
}

GradientSet backward(const DenseNetwork& net, const std::vector<double>& input,
                     const std::vector<double>& upstream_grad) {
    GradientSet g = zero_gradients(net);
    backward_accumulate(net, input, upstream_grad, 1.0, g, &g.input_grad);
    return g;
}

void input_gradient(const DenseNetwork& net, const std::vector<double>& input,
                    const std::vector<double>& upstream_grad, std::vector<double>& out) {
    if (input.size() != net.input_dim())
        throw ShapeMismatch("input_gradient: bad input size");
    if (upstream_grad.size() != net.output_dim())
        throw ShapeMismatch("input_gradient: bad upstream size");

    thread_local std::vector<std::vector<double>> outputs;
    thread_local std::vector<double> delta, next_delta;
    outputs.resize(net.layers.size());

    const std::vector<double>* x = &input;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        outputs[l].assign(layer.out, 0.0);
        for (std::size_t i = 0; i < layer.out; ++i) {
            const double* wrow = layer.weights.data() + i * layer.in;
            outputs[l][i] =
                apply_act(layer.act, layer.bias[i] + dot4(wrow, x->data(), layer.in));
        }
        x = &outputs[l];
    }

    delta = upstream_grad;
    for (std::size_t li = net.layers.size(); li-- > 0;) {
        const auto& layer = net.layers[li];
        next_delta.assign(layer.in, 0.0);
        for (std::size_t i = 0; i < layer.out; ++i) {
            const double dz = delta[i] * act_grad_from_output(layer.act, outputs[li][i]);
            const double* wrow = layer.weights.data() + i * layer.in;
            for (std::size_t j = 0; j < layer.in; ++j) next_delta[j] += dz * wrow[j];
        }
        delta.swap(next_delta);
    }
    out = delta;
}

OptimizerState make_optimizer(const DenseNetwork& net, double learning_rate) {
    OptimizerState opt;
    opt.learning_rate = learning_rate;
    opt.layers.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        opt.layers[l].m_w.assign(net.layers[l].weights.size(), 0.0);
        opt.layers[l].v_w.assign(net.layers[l].weights.size(), 0.0);
        opt.layers[l].m_b.assign(net.layers[l].bias.size(), 0.0);
        opt.layers[l].v_b.assign(net.layers[l].bias.size(), 0.0);
    }
    return opt;
}

namespace {

void adam_update(double* param, const double* grad, double* m, double* v, std::size_t n,
                 double lr, double b1, double b2, double eps, double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
        v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        param[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

} // namespace

void optimizer_step(DenseNetwork& net, const GradientSet& grads, OptimizerState& opt) {
    if (grads.layers.size() != net.layers.size() || opt.layers.size() != net.layers.size())
        throw ShapeMismatch("optimizer_step: layer count mismatch");
    opt.step_count += 1;
    const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step_count));
    const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step_count));
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        adam_update(layer.weights.data(), grads.layers[l].weights.data(),
                    opt.layers[l].m_w.data(), opt.layers[l].v_w.data(), layer.weights.size(),
                    opt.learning_rate, opt.beta1, opt.beta2, opt.epsilon, bc1, bc2);
        adam_update(layer.bias.data(), grads.layers[l].bias.data(), opt.layers[l].m_b.data(),
                    opt.layers[l].v_b.data(), layer.bias.size(), opt.learning_rate, opt.beta1,
                    opt.beta2, opt.epsilon, bc1, bc2);
    }
}

void soft_update(DenseNetwork& target, const DenseNetwork& online, double tau) {
    if (target.layers.size() != online.layers.size())
        throw ArchitectureMismatch("soft_update: layer count mismatch");
    for (std::size_t l = 0; l < target.layers.size(); ++l) {
        auto& t = target.layers[l];
        const auto& o = online.layers[l];
        if (t.in != o.in || t.out != o.out)
            throw ArchitectureMismatch("soft_update: layer shape mismatch");
        for (std::size_t i = 0; i < t.weights.size(); ++i)
            t.weights[i] = tau * o.weights[i] + (1.0 - tau) * t.weights[i];
        for (std::size_t i = 0; i < t.bias.size(); ++i)
            t.bias[i] = tau * o.bias[i] + (1.0 - tau) * t.bias[i];
    }
}

void save_network(const DenseNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "quadftc-net 1\n" << net.layers.size() << "\n";
    char buf[40];
    for (const auto& layer : net.layers) {
        out << layer.in << " " << layer.out << " " << activation_name(layer.act) << "\n";
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", layer.weights[i]);
            out << buf << ((i + 1) % layer.in == 0 ? "\n" : " ");
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", layer.bias[i]);
            out << buf << (i + 1 == layer.bias.size() ? "\n" : " ");
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

DenseNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "quadftc-net" || version != "1")
        throw std::runtime_error("bad checkpoint header in " + path);
    std::size_t n_layers = 0;
    in >> n_layers;
    DenseNetwork net;
    for (std::size_t l = 0; l < n_layers; ++l) {
        DenseLayer layer;
        std::string act;
        in >> layer.in >> layer.out >> act;
        layer.act = activation_from_name(act);
        layer.weights.resize(layer.out * layer.in);
        layer.bias.resize(layer.out);
        for (auto& w : layer.weights) in >> w;
        for (auto& b : layer.bias) in >> b;
        if (!in) throw std::runtime_error("truncated checkpoint: " + path);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

} // namespace quadftc
