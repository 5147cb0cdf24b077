#include "hdpo/toolworld.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hdpo/rng.hpp"

namespace hdpo {

namespace {

// Stream-tag salts keep prompt generation, episode draws, and prompt ids on
// disjoint substreams of the same seed.
constexpr std::uint64_t kPromptStream = 0x70726f6d70747331ULL;
constexpr std::uint64_t kPromptIdSalt = 0x6964313233343536ULL;
constexpr std::uint64_t kEpisodeSalt = 0x6570697364726e67ULL;

double uniform01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

int sample_categorical(const std::vector<double>& probs, std::mt19937_64& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;  // guard against rounding
}

}  // namespace

void validate_env_config(const EnvConfig& cfg) {
    if (cfg.num_answers < 2) {
        throw std::invalid_argument("EnvConfig: num_answers must be >= 2");
    }
    if (cfg.max_turns < 1) {
        throw std::invalid_argument("EnvConfig: max_turns must be >= 1");
    }
    if (cfg.p_hard < 0.0 || cfg.p_hard > 1.0) {
        throw std::invalid_argument("EnvConfig: p_hard out of [0,1]");
    }
    if (cfg.p_reveal <= 0.0 || cfg.p_reveal > 1.0) {
        throw std::invalid_argument("EnvConfig: p_reveal out of (0,1]");
    }
    if (cfg.easy_signal_noise < 0.0 || cfg.easy_signal_noise >= 0.5) {
        throw std::invalid_argument("EnvConfig: easy_signal_noise out of [0,0.5)");
    }
}

EnvState make_episode(const Prompt& prompt, const EnvConfig& cfg,
                      std::uint64_t stream_tag) {
    EnvState st;
    st.prompt = prompt;
    st.observation = prompt.observation_code;
    st.rng = make_stream(cfg.seed, kEpisodeSalt, prompt.id, stream_tag);
    return st;
}

int env_step(EnvState& state, int action, const EnvConfig& cfg) {
    if (state.terminal) {
        throw std::logic_error("env_step: episode already terminal");
    }
    if (action < 0 || action > cfg.tool_action()) {
        throw std::invalid_argument("env_step: action out of range");
    }
    if (action < cfg.num_answers) {
        state.terminal = true;
        state.final_answer = action;
        return state.observation;
    }
    // Tool action.
    ++state.turn;
    if (state.turn >= cfg.max_turns) {
        state.terminal = true;
        state.truncated = true;
        return state.observation;
    }
    if (uniform01(state.rng) < cfg.p_reveal) {
        state.evidence_revealed = true;
        state.observation = state.prompt.answer_key;
    }
    return state.observation;
}

std::vector<Prompt> generate_prompts(const EnvConfig& cfg, int n) {
    validate_env_config(cfg);
    if (n < 1) throw std::invalid_argument("generate_prompts: n must be >= 1");
    std::mt19937_64 rng = make_stream(cfg.seed, kPromptStream);
    std::uniform_int_distribution<int> key_dist(0, cfg.num_answers - 1);
    std::vector<Prompt> prompts;
    prompts.reserve(n);
    for (int i = 0; i < n; ++i) {
        Prompt p;
        p.id = derive_seed(cfg.seed, kPromptIdSalt, static_cast<std::uint64_t>(i));
        p.difficulty =
            uniform01(rng) < cfg.p_hard ? Difficulty::Hard : Difficulty::Easy;
        p.answer_key = key_dist(rng);
        if (p.difficulty == Difficulty::Hard) {
            p.observation_code = cfg.no_evidence_code();
        } else {
            p.observation_code = p.answer_key;
            if (cfg.easy_signal_noise > 0.0 &&
                uniform01(rng) < cfg.easy_signal_noise) {
                // A misleading easy signal: uniformly one of the wrong keys.
                std::uniform_int_distribution<int> other(0, cfg.num_answers - 2);
                int wrong = other(rng);
                if (wrong >= p.answer_key) ++wrong;
                p.observation_code = wrong;
            }
        }
        prompts.push_back(p);
    }
    return prompts;
}

Trajectory rollout_one(const PolicyParams& params, const Prompt& prompt,
                       const EnvConfig& cfg, std::uint64_t stream_tag,
                       bool tool_enabled) {
    EnvState st = make_episode(prompt, cfg, stream_tag);
    Trajectory traj;
    traj.prompt_id = prompt.id;
    while (!st.terminal) {
        std::vector<double> probs =
            action_distribution(params, st.observation, st.turn);
        if (!tool_enabled) {
            probs[cfg.tool_action()] = 0.0;
            double z = 0.0;
            for (double v : probs) z += v;
            for (double& v : probs) v /= z;
        }
        const int action = sample_categorical(probs, st.rng);
        traj.steps.push_back(
            {st.observation, action, std::log(probs[action])});
        if (action == cfg.tool_action()) ++traj.tool_calls;
        env_step(st, action, cfg);
    }
    traj.final_answer = st.final_answer;
    traj.truncated = st.truncated;
    return traj;
}

RolloutGroup rollout_group(const PolicyParams& params, const Prompt& prompt,
                           const EnvConfig& cfg, int group_size) {
    if (group_size < 2) {
        throw std::invalid_argument("rollout_group: group_size must be >= 2");
    }
    RolloutGroup group;
    group.prompt_id = prompt.id;
    group.group_size = group_size;
    group.trajectories.reserve(group_size);
    for (int j = 0; j < group_size; ++j) {
        group.trajectories.push_back(
            rollout_one(params, prompt, cfg, static_cast<std::uint64_t>(j)));
    }
    return group;
}

OracleMetrics oracle_policy_metrics(const EnvConfig& cfg) {
    validate_env_config(cfg);
    const double k_inv = 1.0 / static_cast<double>(cfg.num_answers);
    const int attempts = cfg.max_turns - 1;  // last turn is reserved to answer
    const double miss = 1.0 - cfg.p_reveal;

    double p_never = std::pow(miss, attempts);
    const double acc_hard = (1.0 - p_never) + p_never * k_inv;

    double expected_calls = 0.0;
    for (int j = 0; j < attempts; ++j) {
        expected_calls += std::pow(miss, j);  // P(at least j+1 calls)
    }

    OracleMetrics m;
    m.accuracy = (1.0 - cfg.p_hard) * (1.0 - cfg.easy_signal_noise) +
                 cfg.p_hard * acc_hard;
    m.expected_tool_calls = cfg.p_hard * expected_calls;
    return m;
}

PolicyParams initial_policy(const EnvConfig& cfg, double tool_bias) {
    validate_env_config(cfg);
    PolicyParams params;
    params.num_actions = cfg.num_actions();
    for (int state = 0; state <= cfg.no_evidence_code(); ++state) {
        for (int turn = 0; turn < cfg.max_turns; ++turn) {
            std::vector<double> logits(params.num_actions, 0.0);
            logits[cfg.tool_action()] = tool_bias;
            params.logits.emplace(ContextKey{state, turn}, std::move(logits));
        }
    }
    return params;
}

}  // namespace hdpo
