#pragma once

#include <string>
#include <vector>

#include "hdpo/advantages.hpp"
#include "hdpo/curation.hpp"
#include "hdpo/policy.hpp"
#include "hdpo/toolworld.hpp"

namespace hdpo {

struct RunConfig {
    EnvConfig env;
    HyperParams hp;
    UpdateConfig update;
    Mode mode = Mode::Decoupled;
    int iterations = 200;
    int prompts_per_batch = 32;
    bool fixed_prompt_set = false;  // reuse one generated set every iteration
    double init_tool_bias = 0.0;    // initial logit offset on the tool action
    std::uint64_t seed = 0;
    std::string metrics_path;
    std::string checkpoint_path;
    int checkpoint_every = 0;  // 0: write only the final checkpoint
    std::string trajectory_dump_path;
};

void validate_run_config(const RunConfig& cfg);

/// Hash over every behavior-relevant config field; stored in checkpoints so
/// resume can reject a mismatched run definition.
std::uint64_t run_config_hash(const RunConfig& cfg);

struct IterationMetrics {
    int iteration = 0;
    double accuracy = 0.0;
    double tool_rate = 0.0;                 // mean tool calls per episode
    double tool_invocation_fraction = 0.0;  // episodes with >= 1 call
    double mean_qualifying_size = 0.0;
    double mean_a_acc_magnitude = 0.0;
    double mean_a_tool_magnitude = 0.0;
    double loss = 0.0;
};

extern const char* const kMetricsCsvHeader;
std::string metrics_csv_row(const IterationMetrics& m);

struct TrainResult {
    PolicyParams params;
    std::vector<IterationMetrics> metrics;
};

/// Algorithm loop: rollout -> reward -> accuracy advantage -> qualifying set
/// -> tool advantage -> update, once per iteration. Fresh prompt batches are
/// drawn each iteration unless fixed_prompt_set is set.
TrainResult train(const RunConfig& cfg);

/// Continues a checkpointed run; the metric tail matches the uninterrupted
/// run given identical seeds.
TrainResult train_resumed(const RunConfig& cfg, const Checkpoint& ckpt);

struct SweepRow {
    double value = 0.0;
    double accuracy = 0.0;
    double tool_rate = 0.0;
};

/// One full train per value with shared seed discipline.
/// parameter is "alpha" or "w_tool".
std::vector<SweepRow> sweep(const RunConfig& base, const std::string& parameter,
                            const std::vector<double>& values);

struct DiagnosticsRow {
    int group_id = 0;
    double alpha = 0.0;
    double sigma_acc_sq = 0.0;
    double sigma_tool_sq = 0.0;
    double covariance = 0.0;
    std::optional<double> taylor_residual_max;
};

std::vector<DiagnosticsRow> diagnose(const RunConfig& cfg,
                                     const PolicyParams& params,
                                     const std::vector<double>& alphas);
void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows,
                           const std::string& path);

struct EvalStats {
    double accuracy = 0.0;
    double easy_accuracy = 0.0;
    double hard_accuracy = 0.0;
    double tool_rate = 0.0;
    double tool_invocation_fraction = 0.0;
    double easy_tool_fraction = 0.0;
    double hard_tool_fraction = 0.0;
    int easy_count = 0;
    int hard_count = 0;
};

/// Samples one rollout per prompt on a fresh prompt set and splits the usual
/// metrics by latent difficulty.
EvalStats evaluate_policy(const PolicyParams& params, const EnvConfig& env,
                          int n_prompts, std::uint64_t eval_seed);

}  // namespace hdpo
