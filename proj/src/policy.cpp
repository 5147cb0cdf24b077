#include "hdpo/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hdpo {

namespace {

std::vector<double> softmax(std::span<const double> logits) {
    const double m = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double z = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        z += p[i];
    }
    for (double& v : p) v /= z;
    return p;
}

const std::vector<double>* find_context(const PolicyParams& params,
                                        const ContextKey& key) {
    auto it = params.logits.find(key);
    return it == params.logits.end() ? nullptr : &it->second;
}

}  // namespace

std::vector<double> action_distribution(const PolicyParams& params, int state,
                                        int turn) {
    if (params.num_actions < 2) {
        throw std::invalid_argument("action_distribution: num_actions must be >= 2");
    }
    const std::vector<double>* logits = find_context(params, {state, turn});
    if (logits == nullptr) {
        return std::vector<double>(params.num_actions,
                                   1.0 / static_cast<double>(params.num_actions));
    }
    return softmax(*logits);
}

std::vector<double> action_log_probs(const PolicyParams& params, int state,
                                     int turn) {
    std::vector<double> p = action_distribution(params, state, turn);
    for (double& v : p) v = std::log(v);
    return p;
}

LossGrad clipped_surrogate_loss(std::span<const Trajectory> trajectories,
                                std::span<const double> advantages,
                                const PolicyParams& params,
                                const UpdateConfig& cfg) {
    if (trajectories.size() != advantages.size()) {
        throw std::invalid_argument(
            "clipped_surrogate_loss: advantage/trajectory count mismatch");
    }
    std::size_t total_steps = 0;
    for (const Trajectory& t : trajectories) total_steps += t.steps.size();
    LossGrad result;
    if (total_steps == 0) return result;

    const double lo = 1.0 - cfg.clip_ratio;
    const double hi = 1.0 + cfg.clip_ratio;
    // Distributions recur across steps; cache per context.
    std::map<ContextKey, std::vector<double>> dist_cache;
    double objective_sum = 0.0;

    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const double adv = advantages[i];
        const std::vector<Step>& steps = trajectories[i].steps;
        for (std::size_t t = 0; t < steps.size(); ++t) {
            const Step& step = steps[t];
            const ContextKey key{step.state, static_cast<int>(t)};
            auto [it, inserted] = dist_cache.try_emplace(key);
            if (inserted) {
                it->second = action_distribution(params, key.state, key.turn);
            }
            const std::vector<double>& probs = it->second;
            if (step.action < 0 || step.action >= params.num_actions) {
                throw std::invalid_argument(
                    "clipped_surrogate_loss: action out of range");
            }
            const double logp_new = std::log(probs[step.action]);
            const double rho = std::exp(logp_new - step.logp);
            const double unclipped = rho * adv;
            const double clipped = std::clamp(rho, lo, hi) * adv;
            if (unclipped <= clipped) {
                objective_sum += unclipped;
                // d(rho*A)/d logit_z = A*rho*(1[z==a] - pi_z)
                auto [git, gnew] = result.grad.try_emplace(key);
                if (gnew) git->second.assign(params.num_actions, 0.0);
                std::vector<double>& g = git->second;
                for (int z = 0; z < params.num_actions; ++z) {
                    const double indicator = (z == step.action) ? 1.0 : 0.0;
                    g[z] += adv * rho * (indicator - probs[z]);
                }
            } else {
                objective_sum += clipped;  // clip active: constant in theta
            }
        }
    }

    const double inv_n = 1.0 / static_cast<double>(total_steps);
    result.loss = -objective_sum * inv_n;
    for (auto& [key, g] : result.grad) {
        for (double& v : g) v *= -inv_n;
    }
    return result;
}

namespace {

void axpy(GradTable& acc, const GradTable& g, double scale) {
    for (const auto& [key, vec] : g) {
        auto [it, inserted] = acc.try_emplace(key);
        if (inserted) it->second.assign(vec.size(), 0.0);
        for (std::size_t i = 0; i < vec.size(); ++i) {
            it->second[i] += scale * vec[i];
        }
    }
}

}  // namespace

LossGrad hdpo_loss(std::span<const Trajectory> trajectories,
                   std::span<const AdvantageBundle> advantages,
                   const PolicyParams& params, const HyperParams& hp,
                   const UpdateConfig& cfg, Mode mode) {
    if (trajectories.size() != advantages.size()) {
        throw std::invalid_argument("hdpo_loss: advantage/trajectory count mismatch");
    }
    const std::size_t n = trajectories.size();
    LossGrad result;
    switch (mode) {
        case Mode::AccuracyOnly: {
            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = advantages[i].a_acc;
            LossGrad acc = clipped_surrogate_loss(trajectories, a, params, cfg);
            result.loss = hp.w_acc * acc.loss;
            axpy(result.grad, acc.grad, hp.w_acc);
            break;
        }
        case Mode::Coupled: {
            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = advantages[i].a_mix;
            result = clipped_surrogate_loss(trajectories, a, params, cfg);
            break;
        }
        case Mode::Decoupled: {
            std::vector<double> a_acc(n), a_tool(n);
            for (std::size_t i = 0; i < n; ++i) {
                a_acc[i] = advantages[i].a_acc;
                a_tool[i] = advantages[i].a_tool;
            }
            LossGrad acc = clipped_surrogate_loss(trajectories, a_acc, params, cfg);
            result.loss = hp.w_acc * acc.loss;
            axpy(result.grad, acc.grad, hp.w_acc);
            if (hp.w_tool != 0.0) {
                LossGrad tool =
                    clipped_surrogate_loss(trajectories, a_tool, params, cfg);
                result.loss += hp.w_tool * tool.loss;
                axpy(result.grad, tool.grad, hp.w_tool);
            }
            break;
        }
    }
    return result;
}

double global_grad_norm(const GradTable& grad) {
    double sq = 0.0;
    for (const auto& [key, g] : grad) {
        for (double v : g) sq += v * v;
    }
    return std::sqrt(sq);
}

PolicyParams apply_update(PolicyParams params, const GradTable& gradient,
                          const UpdateConfig& cfg) {
    double scale = 1.0;
    if (cfg.max_grad_norm.has_value()) {
        const double norm = global_grad_norm(gradient);
        if (norm > *cfg.max_grad_norm) scale = *cfg.max_grad_norm / norm;
    }
    for (const auto& [key, g] : gradient) {
        if (static_cast<int>(g.size()) != params.num_actions) {
            throw std::invalid_argument("apply_update: gradient shape mismatch");
        }
        auto [it, inserted] = params.logits.try_emplace(key);
        if (inserted) it->second.assign(params.num_actions, 0.0);
        std::vector<double>& theta = it->second;
        for (int z = 0; z < params.num_actions; ++z) {
            theta[z] -= cfg.learning_rate * scale * g[z];
        }
    }
    ++params.version;
    return params;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    nlohmann::json contexts = nlohmann::json::array();
    for (const auto& [key, logits] : ckpt.params.logits) {
        contexts.push_back({key.state, key.turn, logits});
    }
    const nlohmann::json j = {{"schema", 1},
                              {"num_actions", ckpt.params.num_actions},
                              {"version", ckpt.params.version},
                              {"iteration", ckpt.iteration},
                              {"config_hash", ckpt.config_hash},
                              {"contexts", contexts}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("save_checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path, int expected_num_actions) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
    nlohmann::json j;
    in >> j;
    Checkpoint ckpt;
    ckpt.params.num_actions = j.at("num_actions").get<int>();
    if (expected_num_actions != 0 &&
        ckpt.params.num_actions != expected_num_actions) {
        throw std::runtime_error(
            "load_checkpoint: action-space size mismatch (file has " +
            std::to_string(ckpt.params.num_actions) + ", expected " +
            std::to_string(expected_num_actions) + ")");
    }
    ckpt.params.version = j.at("version").get<std::uint64_t>();
    ckpt.iteration = j.at("iteration").get<std::uint64_t>();
    ckpt.config_hash = j.at("config_hash").get<std::uint64_t>();
    for (const auto& entry : j.at("contexts")) {
        const ContextKey key{entry.at(0).get<int>(), entry.at(1).get<int>()};
        std::vector<double> logits = entry.at(2).get<std::vector<double>>();
        if (static_cast<int>(logits.size()) != ckpt.params.num_actions) {
            throw std::runtime_error("load_checkpoint: malformed logit vector");
        }
        for (double v : logits) {
            if (!std::isfinite(v)) {
                throw std::runtime_error("load_checkpoint: non-finite logit");
            }
        }
        ckpt.params.logits.emplace(key, std::move(logits));
    }
    return ckpt;
}

}  // namespace hdpo
