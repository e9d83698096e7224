#include "quadftc/ddpg_agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace quadftc {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("replay buffer capacity must be > 0");
    data_.resize(capacity_);
}

void ReplayBuffer::push(const Transition& t) {
    data_[cursor_] = t;
    cursor_ = (cursor_ + 1) % capacity_;
    if (count_ < capacity_) count_ += 1;
}

const Transition& ReplayBuffer::sample(SplitMix64& rng) const {
    return data_[static_cast<std::size_t>(rng.below(count_))];
}

const std::vector<double>& ou_step(OUNoise& noise, SplitMix64& rng) {
    const double root_dt = std::sqrt(noise.dt);
    for (auto& xi : noise.x)
        xi += noise.theta_ou * (noise.mu_ou - xi) * noise.dt +
              noise.sigma_ou * root_dt * rng.gaussian();
    return noise.x;
}

namespace {

std::size_t live_count(int failed_rotor) { return failed_rotor >= 1 ? 3 : 4; }

void concat_obs_action(const Observation& obs, const Action& action,
                       std::vector<double>& out) {
    out.resize(10);
    for (int i = 0; i < 6; ++i) out[i] = obs[i];
    for (int i = 0; i < 4; ++i) out[6 + i] = action[i];
}

} // namespace

DdpgNetworks make_ddpg_networks(const DdpgConfig& cfg, int failed_rotor, SplitMix64& rng) {
    cfg.validate();
    DdpgNetworks nets;
    nets.failed_rotor = failed_rotor;
    const std::size_t n_out = live_count(failed_rotor);

    SplitMix64 actor_rng = rng.fork(1);
    SplitMix64 critic_rng = rng.fork(2);
    nets.actor = make_network({6, cfg.hidden1, cfg.hidden2, n_out},
                              {Activation::ReLU, Activation::ReLU, Activation::Sigmoid},
                              actor_rng, 0.003);
    nets.critic = make_network(
        {10, cfg.hidden1, cfg.hidden2, 1},
        {Activation::ReLU, Activation::ReLU,
         cfg.critic_sigmoid_output ? Activation::Sigmoid : Activation::Linear},
        critic_rng);
    nets.actor_target = nets.actor;
    nets.critic_target = nets.critic;
    return nets;
}

Action assemble_action(const std::vector<double>& live_outputs, int failed_rotor) {
    Action a{0.0, 0.0, 0.0, 0.0};
    std::size_t k = 0;
    for (int i = 0; i < 4; ++i) {
        if (failed_rotor >= 1 && i + 1 == failed_rotor) continue;
        a[i] = live_outputs[k++];
    }
    return a;
}

Action act(const DenseNetwork& actor, const Observation& obs, int failed_rotor,
           const std::vector<double>* noise) {
    std::vector<double> out = forward(actor, std::vector<double>(obs.begin(), obs.end()));
    if (noise) {
        for (std::size_t i = 0; i < out.size() && i < noise->size(); ++i)
            out[i] += (*noise)[i];
    }
    for (auto& v : out) v = std::clamp(v, 0.0, 1.0);
    return assemble_action(out, failed_rotor);
}

double train_step(DdpgNetworks& nets, ReplayBuffer& buffer, DdpgOptimizers& opts,
                  const DdpgConfig& cfg, double gamma, SplitMix64& rng) {
    if (buffer.size() < std::max(cfg.minibatch, cfg.warmup)) throw InsufficientData();

    const std::size_t B = cfg.minibatch;
    std::vector<const Transition*> batch(B);
    for (auto& t : batch) t = &buffer.sample(rng);

    const double inv_b = 1.0 / static_cast<double>(B);
    std::vector<double> io_buf(10), obs_vec(6), upstream(1), input_grad;

    // Critic regression toward the frozen-target one-step return.
    GradientSet critic_grad = zero_gradients(nets.critic);
    double loss = 0.0;
    for (const Transition* t : batch) {
        std::copy(t->next_obs.begin(), t->next_obs.end(), obs_vec.begin());
        const Action a_next =
            assemble_action(forward(nets.actor_target, obs_vec), nets.failed_rotor);
        concat_obs_action(t->next_obs, a_next, io_buf);
        const double q_next = forward(nets.critic_target, io_buf)[0];
        const double y = t->reward + gamma * q_next;

        concat_obs_action(t->obs, t->action, io_buf);
        const double q = forward(nets.critic, io_buf)[0];
        const double err = q - y;
        loss += err * err;
        upstream[0] = 2.0 * err;
        backward_accumulate(nets.critic, io_buf, upstream, inv_b, critic_grad);
    }
    loss *= inv_b;
    optimizer_step(nets.critic, critic_grad, opts.critic);

    // Actor ascent on mean Q(s, actor(s)): the critic's input gradient at the
    // action slots, chained through the assembled action, drives the actor.
    GradientSet actor_grad = zero_gradients(nets.actor);
    std::vector<double> dq_dlive;
    for (const Transition* t : batch) {
        std::copy(t->obs.begin(), t->obs.end(), obs_vec.begin());
        const std::vector<double> live = forward(nets.actor, obs_vec);
        const Action a = assemble_action(live, nets.failed_rotor);

        concat_obs_action(t->obs, a, io_buf);
        upstream[0] = 1.0;
        input_gradient(nets.critic, io_buf, upstream, input_grad);
        dq_dlive.clear();
        for (int i = 0; i < 4; ++i) {
            if (nets.failed_rotor >= 1 && i + 1 == nets.failed_rotor) continue;
            // Ascend Q: feed the negated gradient into the descent step.
            dq_dlive.push_back(-input_grad[6 + i]);
        }
        backward_accumulate(nets.actor, obs_vec, dq_dlive, inv_b, actor_grad);
    }
    optimizer_step(nets.actor, actor_grad, opts.actor);

    soft_update(nets.actor_target, nets.actor, cfg.tau);
    soft_update(nets.critic_target, nets.critic, cfg.tau);
    return loss;
}

TrainResult train(Environment& env, const DdpgConfig& cfg, SplitMix64& rng,
                  const EpisodeCallback& on_episode) {
    cfg.validate();
    SplitMix64 net_rng = rng.fork(10);
    SplitMix64 ou_rng = rng.fork(11);
    SplitMix64 sample_rng = rng.fork(12);
    SplitMix64 ic_rng = rng.fork(13);

    const int failed = env.config().failed_rotor;
    DdpgNetworks nets = make_ddpg_networks(cfg, failed, net_rng);
    DdpgOptimizers opts{make_optimizer(nets.actor, cfg.actor_lr),
                        make_optimizer(nets.critic, cfg.critic_lr)};
    ReplayBuffer buffer(cfg.buffer_capacity);
    OUNoise noise(live_count(failed), env.config().dt);
    noise.theta_ou = cfg.ou_theta;

    TrainResult result;
    result.best_score = -std::numeric_limits<double>::infinity();

    const InitialCondition table3[5] = {
        InitialCondition::named(InitialCondition::Kind::IC1),
        InitialCondition::named(InitialCondition::Kind::IC2),
        InitialCondition::named(InitialCondition::Kind::IC3),
        InitialCondition::named(InitialCondition::Kind::IC4),
        InitialCondition::named(InitialCondition::Kind::IC5)};

    for (long ep = 0; ep < cfg.episodes; ++ep) {
        const double frac = cfg.episodes > 1 ? double(ep) / double(cfg.episodes - 1) : 0.0;
        noise.sigma_ou = cfg.ou_sigma + frac * (cfg.ou_sigma_final - cfg.ou_sigma);
        noise.reset();

        InitialCondition ic = InitialCondition::named(InitialCondition::Kind::Nominal);
        if (cfg.sample_table3_ics) ic = table3[ic_rng.below(5)];

        Observation obs = env.reset(ic);
        double score = 0.0;
        long steps = 0;
        double loss_sum = 0.0;
        long loss_count = 0;

        while (!env.done()) {
            const auto& n = ou_step(noise, ou_rng);
            const Action a = act(nets.actor, obs, failed, &n);
            const StepResult sr = env.step(a);

            Transition t;
            t.obs = obs;
            t.action = a;
            t.next_obs = sr.obs;
            t.reward = sr.reward;
            buffer.push(t);

            score += sr.reward;
            steps += 1;
            obs = sr.obs;

            if (buffer.size() >= std::max(cfg.minibatch, cfg.warmup)) {
                loss_sum += train_step(nets, buffer, opts, cfg, env.config().gamma, sample_rng);
                loss_count += 1;
            }
        }

        LearningCurvePoint point;
        point.episode = ep;
        point.score = score;
        point.steps = steps;
        point.critic_loss = loss_count > 0 ? loss_sum / double(loss_count) : 0.0;
        point.noise_sigma = noise.sigma_ou;
        result.curve.push_back(point);
        if (on_episode) on_episode(point);

        if (score > result.best_score) {
            result.best_score = score;
            result.best_episode = ep;
            result.best_actor = nets.actor;
        }
    }
    result.final_actor = nets.actor;
    result.final_critic = nets.critic;
    if (result.best_episode < 0) result.best_actor = nets.actor;
    return result;
}

EpisodeResult evaluate_actor(const DenseNetwork& actor, Environment& env,
                             const InitialCondition& ic) {
    const int failed = env.config().failed_rotor;
    Observation obs = env.reset(ic);

    EpisodeResult result;
    SummaryAccumulator acc(env.state());
    while (!env.done()) {
        const Action a = act(actor, obs, failed);
        const StepResult sr = env.step(a);

        TrajectoryRow row;
        row.t = env.time();
        row.state = sr.state;
        for (int i = 0; i < 4; ++i)
            row.omega[i] = env.fault().is_failed(i + 1)
                               ? 0.0
                               : std::clamp(a[i], 0.0, 1.0) * env.params().omega_max;
        row.reward = sr.reward;
        row.mode = env.mode();
        result.trajectory.push_back(row);
        acc.add(sr.state, sr.reward, env.mode());
        obs = sr.obs;
    }
    result.summary = acc.finish(env.time(), env.done_reason());
    return result;
}

std::string learning_curve_csv_header() {
    return "episode,score,steps,critic_loss,noise_sigma";
}

std::string learning_curve_csv_row(const LearningCurvePoint& p) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%ld,%.9g,%ld,%.9g,%.9g", p.episode, p.score, p.steps,
                  p.critic_loss, p.noise_sigma);
    return buf;
}

} // namespace quadftc
