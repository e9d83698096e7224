#pragma once
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadftc/environment.hpp"
#include "quadftc/neural.hpp"
#include "quadftc/rng.hpp"
#include "quadftc/trajectory.hpp"

namespace quadftc {

struct InsufficientData : std::runtime_error {
    InsufficientData() : std::runtime_error("replay buffer below warmup/minibatch size") {}
};

// Fixed-capacity ring of transitions; once full the oldest record is
// overwritten. Sampling is uniform over the filled region.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(const Transition& t);
    const Transition& sample(SplitMix64& rng) const;
    const Transition& at(std::size_t i) const { return data_[i]; }

    std::size_t size() const { return count_; }
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    std::vector<Transition> data_;
    std::size_t cursor_ = 0;
    std::size_t count_ = 0;
};

// Mean-reverting exploration noise, one component per live rotor:
//   x <- x + theta*(mu - x)*dt + sigma*sqrt(dt)*xi,  xi ~ N(0,1)
struct OUNoise {
    std::vector<double> x;
    double theta_ou = 0.15;
    double sigma_ou = 0.2;
    double mu_ou = 0.0;
    double dt = 0.01;

    explicit OUNoise(std::size_t dim, double dt_ = 0.01)
        : x(dim, 0.0), dt(dt_) {}

    void reset() { std::fill(x.begin(), x.end(), mu_ou); }
};

// Advances the noise state in place and returns the new vector.
const std::vector<double>& ou_step(OUNoise& noise, SplitMix64& rng);

struct DdpgConfig {
    std::size_t buffer_capacity = 100000;
    std::size_t minibatch = 64;
    double tau = 0.005;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    long episodes = 2000;
    std::size_t warmup = 1000;        // transitions before learning starts
    double train_horizon_s = 10.0;    // desk-scale episode length for training
    double ou_theta = 0.15;
    double ou_sigma = 0.2;
    double ou_sigma_final = 0.02;     // linear decay target over the run
    std::size_t hidden1 = 64;
    std::size_t hidden2 = 64;
    bool critic_sigmoid_output = false;
    bool sample_table3_ics = false;   // sample IC1..IC5 at reset instead of Nominal

    void validate() const {
        if (!(tau > 0 && tau <= 1)) throw std::invalid_argument("ddpg.tau must be in (0,1]");
        if (minibatch == 0 || minibatch > buffer_capacity)
            throw std::invalid_argument("ddpg.minibatch must be in [1, capacity]");
        if (episodes < 0) throw std::invalid_argument("ddpg.episodes must be >= 0");
        if (!(train_horizon_s > 0)) throw std::invalid_argument("ddpg.train_horizon_s must be > 0");
    }
};

struct LearningCurvePoint {
    long episode = 0;
    double score = 0.0;       // summed reward
    long steps = 0;
    double critic_loss = 0.0; // mean over the episode's train steps
    double noise_sigma = 0.0;
};
using LearningCurve = std::vector<LearningCurvePoint>;

// The actor maps the 6-component observation to one sigmoid command per live
// rotor; the critic scores the observation concatenated with all 4 action
// slots (failed slot pinned to 0).
struct DdpgNetworks {
    DenseNetwork actor, critic;
    DenseNetwork actor_target, critic_target;
    int failed_rotor = 4;  // 0 = none
};

DdpgNetworks make_ddpg_networks(const DdpgConfig& cfg, int failed_rotor, SplitMix64& rng);

// Map the actor's live-rotor outputs into a 4-slot action, failed slot 0.
Action assemble_action(const std::vector<double>& live_outputs, int failed_rotor);

// Policy action for an observation: actor forward, plus exploration noise if
// given, clamped to [0,1]; the failed rotor's slot is fixed to 0.
Action act(const DenseNetwork& actor, const Observation& obs, int failed_rotor,
           const std::vector<double>* noise = nullptr);

struct DdpgOptimizers {
    OptimizerState actor;
    OptimizerState critic;
};

// One minibatch update: critic regression toward r + gamma*Q'(s', actor'(s')),
// actor ascent on Q(s, actor(s)) through the critic's input gradient, then
// soft target updates. Returns the critic loss on the sampled batch.
double train_step(DdpgNetworks& nets, ReplayBuffer& buffer, DdpgOptimizers& opts,
                  const DdpgConfig& cfg, double gamma, SplitMix64& rng);

struct TrainResult {
    LearningCurve curve;
    DenseNetwork best_actor;     // actor snapshot from the best-scoring episode
    double best_score = 0.0;
    long best_episode = -1;
    DenseNetwork final_actor;
    DenseNetwork final_critic;
};

using EpisodeCallback = std::function<void(const LearningCurvePoint&)>;

// Full training loop. Deterministic given the seed stream. Episodes that end
// in crashes are ordinary data.
TrainResult train(Environment& env, const DdpgConfig& cfg, SplitMix64& rng,
                  const EpisodeCallback& on_episode = nullptr);

// Roll one noise-free episode of a frozen actor through an environment.
EpisodeResult evaluate_actor(const DenseNetwork& actor, Environment& env,
                             const InitialCondition& ic);

std::string learning_curve_csv_header();
std::string learning_curve_csv_row(const LearningCurvePoint& p);

} // namespace quadftc
