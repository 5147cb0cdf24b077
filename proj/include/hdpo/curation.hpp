#pragma once

#include <span>
#include <vector>

#include "hdpo/toolworld.hpp"
#include "hdpo/types.hpp"

namespace hdpo {

struct PassAtKReport {
    std::uint64_t prompt_id = 0;
    int k = 0;
    int successes = 0;
    double pass_rate = 0.0;
};

/// Samples k rollouts and counts correct answers. With tool_enabled=false the
/// tool action is masked out of the action space.
PassAtKReport pass_at_k(const PolicyParams& params, const Prompt& prompt,
                        const EnvConfig& cfg, int k, bool tool_enabled);

/// Drops prompts the policy already solves every time without the tool
/// (tool-disabled pass rate of exactly 1).
std::vector<Prompt> solvability_filter(std::span<const Prompt> prompts,
                                       const PolicyParams& params,
                                       const EnvConfig& cfg, int k = 8);

/// Keeps prompts whose tool-enabled pass rate over G rollouts lies strictly
/// inside (0,1), so training groups have nonzero accuracy-reward variance at
/// the filtering snapshot.
std::vector<Prompt> difficulty_calibration_filter(std::span<const Prompt> prompts,
                                                  const PolicyParams& params,
                                                  const EnvConfig& cfg, int G = 8);

}  // namespace hdpo
