#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hdpo/types.hpp"

namespace hdpo {

/// Population mean and variance in one pass. The project-wide convention is
/// population (biased) std everywhere, well-defined down to two samples.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double stddev = 0.0;
};

Moments population_moments(std::span<const double> values);

/// (r_i - mean) / (population std + epsilon). Zero-variance inputs yield
/// all zeros rather than an error.
std::vector<double> grpo_advantage(std::span<const double> rewards, double epsilon);

/// grpo_advantage over r_mix, with r_mix recomputed from (r_acc, r_tool, alpha)
/// so the stored field can never drift from the estimator's input.
std::vector<double> mixed_advantage(std::span<const RewardBundle> bundles,
                                    double alpha, double epsilon);

/// Indices of correct rollouts: {j : r_ans_j > 0}.
std::vector<std::size_t> qualifying_set(std::span<const RewardBundle> bundles);

/// Tool advantage normalized exclusively over the qualifying set; zero for
/// non-members and whenever |Q| < 2.
std::vector<double> conditional_tool_advantage(std::span<const RewardBundle> bundles,
                                               double epsilon);

struct VarianceReport {
    double alpha = 0.0;
    double sigma_acc_sq = 0.0;
    double sigma_tool_sq = 0.0;
    double covariance = 0.0;
    double var_mix_direct = 0.0;
    double var_mix_decomposed = 0.0;
    // Not applicable when the accuracy variance is zero.
    std::optional<double> taylor_residual_max;
};

/// Variance decomposition of the mixed reward plus the first-order wash-out
/// residual max_i |A_mix_i - centered_acc_i/(sigma_acc+epsilon)|.
VarianceReport variance_diagnostics(std::span<const RewardBundle> bundles,
                                    double alpha, double epsilon);

/// Fills the channels a training mode consumes:
///   accuracy_only: a_acc;  coupled: a_mix;  decoupled: a_acc and a_tool.
/// in_qualifying_set is populated in every mode.
std::vector<AdvantageBundle> advantages_for_group(
    std::span<const RewardBundle> bundles, const HyperParams& hp, Mode mode);

}  // namespace hdpo
