#include "hdpo/rewards.hpp"

#include <stdexcept>
#include <string>

namespace hdpo {

JudgeVerdict judge(const Trajectory& trajectory, const Prompt& prompt) {
    if (trajectory.prompt_id != prompt.id) {
        throw std::invalid_argument(
            "judge: trajectory prompt_id " + std::to_string(trajectory.prompt_id) +
            " does not match prompt id " + std::to_string(prompt.id));
    }
    JudgeVerdict v;
    v.format_ok = !trajectory.truncated;
    v.correct = !trajectory.truncated && trajectory.final_answer.has_value() &&
                *trajectory.final_answer == prompt.answer_key;
    return v;
}

double accuracy_reward(const JudgeVerdict& verdict, const HyperParams& hp) {
    return hp.lambda_a * (verdict.correct ? 1.0 : 0.0) +
           hp.lambda_f * (verdict.format_ok ? 1.0 : 0.0);
}

double tool_reward(const JudgeVerdict& verdict, int tool_calls) {
    if (tool_calls < 0) {
        throw std::invalid_argument("tool_reward: negative tool_calls");
    }
    // Conditioning reads on the raw binary correctness, not the scaled r_acc.
    if (!verdict.correct) return 0.0;
    return 1.0 / (static_cast<double>(tool_calls) + 1.0);
}

double coupled_reward(double r_acc, double r_tool, double alpha) {
    return r_acc + alpha * r_tool;
}

RewardBundle score_trajectory(const Trajectory& trajectory, const Prompt& prompt,
                              const HyperParams& hp) {
    const JudgeVerdict v = judge(trajectory, prompt);
    RewardBundle b;
    b.r_ans = v.correct ? 1.0 : 0.0;
    b.r_fmt = v.format_ok ? 1.0 : 0.0;
    b.r_acc = accuracy_reward(v, hp);
    b.r_tool = tool_reward(v, trajectory.tool_calls);
    b.r_mix = coupled_reward(b.r_acc, b.r_tool, hp.alpha);
    return b;
}

std::vector<RewardBundle> score_group(const RolloutGroup& group,
                                      const PromptTable& prompts,
                                      const HyperParams& hp) {
    std::vector<RewardBundle> bundles;
    bundles.reserve(group.trajectories.size());
    for (const Trajectory& t : group.trajectories) {
        auto it = prompts.find(t.prompt_id);
        if (it == prompts.end()) {
            throw std::invalid_argument("score_group: unresolvable prompt_id " +
                                        std::to_string(t.prompt_id));
        }
        bundles.push_back(score_trajectory(t, it->second, hp));
    }
    return bundles;
}

}  // namespace hdpo
