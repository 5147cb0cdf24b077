#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdpo/types.hpp"

namespace hdpo {

/// A discrete policy context: the observation shown to the policy and the
/// turn index at which it acts.
struct ContextKey {
    int state = 0;
    int turn = 0;

    auto operator<=>(const ContextKey&) const = default;
};

/// Tabular softmax policy: one logit vector of num_actions entries per
/// context. Unseen contexts act as all-zero logits (uniform). std::map keeps
/// iteration order deterministic for gradient reductions and checkpoints.
struct PolicyParams {
    int num_actions = 0;
    std::map<ContextKey, std::vector<double>> logits;
    std::uint64_t version = 0;
};

using GradTable = std::map<ContextKey, std::vector<double>>;

struct UpdateConfig {
    double learning_rate = 0.1;
    double clip_ratio = 0.2;
    int epochs_per_batch = 1;
    std::optional<double> max_grad_norm;
};

/// Softmax of the context's logits; uniform for unseen contexts.
std::vector<double> action_distribution(const PolicyParams& params, int state,
                                        int turn);
std::vector<double> action_log_probs(const PolicyParams& params, int state,
                                     int turn);

struct LossGrad {
    double loss = 0.0;
    GradTable grad;
};

/// loss = -mean over all steps of min(rho*A, clip(rho,1-c,1+c)*A), with the
/// trajectory advantage broadcast to each of its steps and rho the
/// new-to-behavior probability ratio. grad is the exact analytic gradient.
LossGrad clipped_surrogate_loss(std::span<const Trajectory> trajectories,
                                std::span<const double> advantages,
                                const PolicyParams& params,
                                const UpdateConfig& cfg);

/// Mode-dependent combination of clipped surrogate losses:
///   decoupled:     w_acc*L(a_acc) + w_tool*L(a_tool)
///   accuracy_only: w_acc*L(a_acc)
///   coupled:       L(a_mix)
LossGrad hdpo_loss(std::span<const Trajectory> trajectories,
                   std::span<const AdvantageBundle> advantages,
                   const PolicyParams& params, const HyperParams& hp,
                   const UpdateConfig& cfg, Mode mode);

double global_grad_norm(const GradTable& grad);

/// Plain gradient-descent step with optional global-norm clipping;
/// increments version.
PolicyParams apply_update(PolicyParams params, const GradTable& gradient,
                          const UpdateConfig& cfg);

struct Checkpoint {
    PolicyParams params;
    std::uint64_t config_hash = 0;
    std::uint64_t iteration = 0;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);

/// Rejects files whose action-space size differs from expected_num_actions
/// (pass 0 to accept any).
Checkpoint load_checkpoint(const std::string& path, int expected_num_actions);

}  // namespace hdpo
