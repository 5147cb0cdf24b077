#pragma once

#include <unordered_map>
#include <vector>

#include "hdpo/types.hpp"

namespace hdpo {

/// Deterministic simulator judge. correct requires an exact answer match;
/// a truncated rollout is both wrong and format-noncompliant.
struct JudgeVerdict {
    bool correct = false;
    bool format_ok = false;
};

using PromptTable = std::unordered_map<std::uint64_t, Prompt>;

JudgeVerdict judge(const Trajectory& trajectory, const Prompt& prompt);

/// lambda_a*[correct] + lambda_f*[format_ok]
double accuracy_reward(const JudgeVerdict& verdict, const HyperParams& hp);

/// 1/(tool_calls+1) if correct, 0 otherwise. Strictly decreasing in
/// tool_calls on the correct branch.
double tool_reward(const JudgeVerdict& verdict, int tool_calls);

/// r_acc + alpha*r_tool
double coupled_reward(double r_acc, double r_tool, double alpha);

RewardBundle score_trajectory(const Trajectory& trajectory, const Prompt& prompt,
                              const HyperParams& hp);

/// One bundle per trajectory, position-aligned with group.trajectories.
std::vector<RewardBundle> score_group(const RolloutGroup& group,
                                      const PromptTable& prompts,
                                      const HyperParams& hp);

}  // namespace hdpo
