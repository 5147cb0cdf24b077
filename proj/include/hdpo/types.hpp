#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hdpo {

enum class Difficulty { Easy, Hard };

/// One task instance. observation_code is fixed at creation time as a
/// deterministic function of (difficulty, answer_key, noise draw).
struct Prompt {
    std::uint64_t id = 0;
    Difficulty difficulty = Difficulty::Easy;
    int answer_key = 0;
    int observation_code = 0;

    bool operator==(const Prompt&) const = default;
};

struct Step {
    int state = 0;
    int action = 0;
    double logp = 0.0;  // behavior-policy log-probability at sampling time

    bool operator==(const Step&) const = default;
};

/// A completed multi-turn rollout. Immutable after construction.
struct Trajectory {
    std::uint64_t prompt_id = 0;
    std::vector<Step> steps;
    int tool_calls = 0;
    std::optional<int> final_answer;
    bool truncated = false;

    bool operator==(const Trajectory&) const = default;
};

/// The G rollouts sampled for one prompt; the unit over which every
/// advantage is normalized. group_size travels with the data so curation
/// cannot desynchronize it from the optimizer.
struct RolloutGroup {
    std::uint64_t prompt_id = 0;
    std::vector<Trajectory> trajectories;
    int group_size = 0;

    bool operator==(const RolloutGroup&) const = default;
};

struct RewardBundle {
    double r_ans = 0.0;   // binary {0,1}
    double r_fmt = 0.0;   // binary {0,1}
    double r_acc = 0.0;   // lambda_a*r_ans + lambda_f*r_fmt
    double r_tool = 0.0;  // 1/(T+1) if correct, else 0
    double r_mix = 0.0;   // r_acc + alpha*r_tool

    bool operator==(const RewardBundle&) const = default;
};

struct AdvantageBundle {
    double a_acc = 0.0;
    double a_tool = 0.0;
    double a_mix = 0.0;
    bool in_qualifying_set = false;

    bool operator==(const AdvantageBundle&) const = default;
};

struct HyperParams {
    double lambda_a = 0.9;
    double lambda_f = 0.1;
    double alpha = 0.0;      // coupled-mode trade-off weight
    double w_acc = 1.0;
    double w_tool = 0.15;
    double epsilon = 1e-8;   // added to the std, never to the variance
    double clip_ratio = 0.2;
    double learning_rate = 0.1;
    int group_size = 16;
};

enum class Mode { Coupled, Decoupled, AccuracyOnly };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

/// Checks every Trajectory and RolloutGroup invariant. Violations are data,
/// not failures: an empty report means the group is well formed.
/// tool_action is the action index counted as a tool call; max_turns is the
/// step budget of the environment that produced the group.
std::vector<std::string> validate_group(const RolloutGroup& group,
                                        int tool_action, int max_turns);

// JSONL wire format. Field names are part of the contract:
// {prompt_id, steps:[{state,action,logp}], tool_calls, final_answer, truncated}
void to_json(nlohmann::json& j, const Step& s);
void from_json(const nlohmann::json& j, Step& s);
void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);
void to_json(nlohmann::json& j, const RolloutGroup& g);
void from_json(const nlohmann::json& j, RolloutGroup& g);
void to_json(nlohmann::json& j, const Prompt& p);
void from_json(const nlohmann::json& j, Prompt& p);

std::string trajectory_to_jsonl(const Trajectory& t);
Trajectory trajectory_from_jsonl(const std::string& line);

}  // namespace hdpo
