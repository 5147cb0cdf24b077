#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hdpo/policy.hpp"
#include "hdpo/types.hpp"

namespace hdpo {

/// ToolWorld: easy prompts are solvable from the initial observation; hard
/// prompts show a no-evidence code until a tool action reveals the answer.
struct EnvConfig {
    int num_answers = 4;            // K; actions 0..K-1 answer, K is the tool
    int max_turns = 4;
    double p_hard = 0.5;
    double p_reveal = 0.9;
    double easy_signal_noise = 0.0; // probability the easy observation lies
    std::uint64_t seed = 0;

    int tool_action() const { return num_answers; }
    int num_actions() const { return num_answers + 1; }
    int no_evidence_code() const { return num_answers; }
};

void validate_env_config(const EnvConfig& cfg);

struct EnvState {
    Prompt prompt;
    int turn = 0;
    bool evidence_revealed = false;
    bool terminal = false;
    bool truncated = false;
    std::optional<int> final_answer;
    int observation = 0;
    std::mt19937_64 rng;  // per-episode stream derived from (seed, prompt.id, tag)
};

/// Episode stream tag keeps different consumers of the same prompt apart.
EnvState make_episode(const Prompt& prompt, const EnvConfig& cfg,
                      std::uint64_t stream_tag);

/// Applies one action. Answer actions terminate; the tool action consumes a
/// turn and reveals evidence with probability p_reveal; exhausting max_turns
/// truncates. Returns the observation for the next turn.
int env_step(EnvState& state, int action, const EnvConfig& cfg);

std::vector<Prompt> generate_prompts(const EnvConfig& cfg, int n);

/// One rollout of the softmax policy; per-step behavior log-probs recorded.
/// With tool_enabled=false the tool action is masked and the distribution
/// renormalized over answers.
Trajectory rollout_one(const PolicyParams& params, const Prompt& prompt,
                       const EnvConfig& cfg, std::uint64_t stream_tag,
                       bool tool_enabled = true);

RolloutGroup rollout_group(const PolicyParams& params, const Prompt& prompt,
                           const EnvConfig& cfg, int group_size);

struct OracleMetrics {
    double accuracy = 0.0;
    double expected_tool_calls = 0.0;
};

/// Analytic performance of the omniscient strategy: answer directly on easy
/// prompts; on hard prompts call the tool until evidence appears (at most
/// max_turns-1 calls), then answer, guessing uniformly if it never does.
OracleMetrics oracle_policy_metrics(const EnvConfig& cfg);

/// Fresh policy table covering every reachable context, with the tool
/// action's logit offset by tool_bias (0 gives the uniform policy).
PolicyParams initial_policy(const EnvConfig& cfg, double tool_bias);

}  // namespace hdpo
