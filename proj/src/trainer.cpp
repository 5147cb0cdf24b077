#include "hdpo/trainer.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hdpo/rewards.hpp"
#include "hdpo/rng.hpp"

namespace hdpo {

namespace {

constexpr std::uint64_t kIterationSalt = 0x697465726174696fULL;
constexpr std::uint64_t kFixedSetSalt = 0x6669786564736574ULL;
constexpr std::uint64_t kDiagnoseSalt = 0x646961676e6f7365ULL;

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix_seed(h, v);
}

std::uint64_t hash_double(double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    return bits;
}

}  // namespace

void validate_run_config(const RunConfig& cfg) {
    validate_env_config(cfg.env);
    if (cfg.iterations < 1) {
        throw std::invalid_argument("RunConfig: iterations must be >= 1");
    }
    if (cfg.prompts_per_batch < 1) {
        throw std::invalid_argument("RunConfig: prompts_per_batch must be >= 1");
    }
    if (cfg.hp.group_size < 2) {
        throw std::invalid_argument("RunConfig: group_size must be >= 2");
    }
    if (!(cfg.hp.epsilon > 0.0)) {
        throw std::invalid_argument("RunConfig: epsilon must be > 0");
    }
    if (!(cfg.update.learning_rate >= 0.0)) {
        throw std::invalid_argument("RunConfig: learning_rate must be >= 0");
    }
    if (!(cfg.update.clip_ratio > 0.0)) {
        throw std::invalid_argument("RunConfig: clip_ratio must be > 0");
    }
    if (cfg.update.epochs_per_batch < 1) {
        throw std::invalid_argument("RunConfig: epochs_per_batch must be >= 1");
    }
    if (cfg.update.max_grad_norm.has_value() && !(*cfg.update.max_grad_norm > 0.0)) {
        throw std::invalid_argument("RunConfig: max_grad_norm must be > 0");
    }
    if (cfg.hp.alpha < 0.0) {
        throw std::invalid_argument("RunConfig: alpha must be >= 0");
    }
}

std::uint64_t run_config_hash(const RunConfig& cfg) {
    std::uint64_t h = 0x68647063666768ULL;
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.env.num_answers));
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.env.max_turns));
    h = hash_combine(h, hash_double(cfg.env.p_hard));
    h = hash_combine(h, hash_double(cfg.env.p_reveal));
    h = hash_combine(h, hash_double(cfg.env.easy_signal_noise));
    h = hash_combine(h, hash_double(cfg.hp.lambda_a));
    h = hash_combine(h, hash_double(cfg.hp.lambda_f));
    h = hash_combine(h, hash_double(cfg.hp.alpha));
    h = hash_combine(h, hash_double(cfg.hp.w_acc));
    h = hash_combine(h, hash_double(cfg.hp.w_tool));
    h = hash_combine(h, hash_double(cfg.hp.epsilon));
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.hp.group_size));
    h = hash_combine(h, hash_double(cfg.update.learning_rate));
    h = hash_combine(h, hash_double(cfg.update.clip_ratio));
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.update.epochs_per_batch));
    h = hash_combine(h, cfg.update.max_grad_norm ? hash_double(*cfg.update.max_grad_norm) : 0ULL);
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.mode));
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.iterations));
    h = hash_combine(h, static_cast<std::uint64_t>(cfg.prompts_per_batch));
    h = hash_combine(h, cfg.fixed_prompt_set ? 1ULL : 0ULL);
    h = hash_combine(h, hash_double(cfg.init_tool_bias));
    h = hash_combine(h, cfg.seed);
    return h;
}

const char* const kMetricsCsvHeader =
    "iteration,accuracy,tool_rate,tool_invocation_fraction,"
    "mean_qualifying_size,mean_a_acc_magnitude,mean_a_tool_magnitude,loss";

std::string metrics_csv_row(const IterationMetrics& m) {
    std::ostringstream os;
    os.precision(17);
    os << m.iteration << ',' << m.accuracy << ',' << m.tool_rate << ','
       << m.tool_invocation_fraction << ',' << m.mean_qualifying_size << ','
       << m.mean_a_acc_magnitude << ',' << m.mean_a_tool_magnitude << ','
       << m.loss;
    return os.str();
}

namespace {

Mode effective_mode(const RunConfig& cfg) {
    // w_tool = 0 degrades the decoupled objective to standard GRPO; routing
    // through the accuracy-only path keeps the two metric series identical.
    if (cfg.mode == Mode::Decoupled && cfg.hp.w_tool == 0.0) {
        return Mode::AccuracyOnly;
    }
    return cfg.mode;
}

TrainResult train_loop(const RunConfig& cfg, PolicyParams params,
                       int start_iteration) {
    validate_run_config(cfg);
    const Mode mode = effective_mode(cfg);

    std::ofstream metrics_out;
    if (!cfg.metrics_path.empty()) {
        metrics_out.open(cfg.metrics_path,
                         start_iteration > 0 ? std::ios::app : std::ios::trunc);
        if (!metrics_out) {
            throw std::runtime_error("train: cannot open metrics file " +
                                     cfg.metrics_path);
        }
        if (start_iteration == 0) metrics_out << kMetricsCsvHeader << '\n';
    }
    std::ofstream dump_out;
    if (!cfg.trajectory_dump_path.empty()) {
        dump_out.open(cfg.trajectory_dump_path,
                      start_iteration > 0 ? std::ios::app : std::ios::trunc);
        if (!dump_out) {
            throw std::runtime_error("train: cannot open trajectory dump " +
                                     cfg.trajectory_dump_path);
        }
    }

    std::vector<Prompt> fixed_set;
    if (cfg.fixed_prompt_set) {
        EnvConfig gen_env = cfg.env;
        gen_env.seed = derive_seed(cfg.seed, kFixedSetSalt);
        fixed_set = generate_prompts(gen_env, cfg.prompts_per_batch);
    }

    TrainResult result;
    for (int iter = start_iteration; iter < cfg.iterations; ++iter) {
        EnvConfig iter_env = cfg.env;
        iter_env.seed = derive_seed(cfg.seed, kIterationSalt,
                                    static_cast<std::uint64_t>(iter));
        const std::vector<Prompt> prompts =
            cfg.fixed_prompt_set ? fixed_set
                                 : generate_prompts(iter_env, cfg.prompts_per_batch);
        PromptTable table;
        for (const Prompt& p : prompts) table.emplace(p.id, p);

        std::vector<Trajectory> batch;
        std::vector<AdvantageBundle> batch_adv;
        batch.reserve(prompts.size() * cfg.hp.group_size);
        batch_adv.reserve(prompts.size() * cfg.hp.group_size);

        IterationMetrics m;
        m.iteration = iter;
        int correct = 0, with_tool = 0, total = 0;
        long tool_calls_sum = 0;
        double q_sum = 0.0, a_acc_sum = 0.0, a_tool_sum = 0.0;

        for (const Prompt& prompt : prompts) {
            RolloutGroup group =
                rollout_group(params, prompt, iter_env, cfg.hp.group_size);
            const std::vector<RewardBundle> bundles =
                score_group(group, table, cfg.hp);
            const std::vector<AdvantageBundle> advs =
                advantages_for_group(bundles, cfg.hp, mode);

            int q_size = 0;
            for (std::size_t i = 0; i < group.trajectories.size(); ++i) {
                const Trajectory& t = group.trajectories[i];
                ++total;
                if (bundles[i].r_ans > 0.0) ++correct;
                if (t.tool_calls > 0) ++with_tool;
                tool_calls_sum += t.tool_calls;
                if (advs[i].in_qualifying_set) ++q_size;
                a_acc_sum += std::abs(advs[i].a_acc);
                a_tool_sum += std::abs(advs[i].a_tool);
                if (dump_out.is_open()) {
                    dump_out << trajectory_to_jsonl(t) << '\n';
                }
            }
            q_sum += q_size;

            for (std::size_t i = 0; i < group.trajectories.size(); ++i) {
                batch.push_back(std::move(group.trajectories[i]));
                batch_adv.push_back(advs[i]);
            }
        }

        m.accuracy = static_cast<double>(correct) / total;
        m.tool_rate = static_cast<double>(tool_calls_sum) / total;
        m.tool_invocation_fraction = static_cast<double>(with_tool) / total;
        m.mean_qualifying_size = q_sum / static_cast<double>(prompts.size());
        m.mean_a_acc_magnitude = a_acc_sum / total;
        m.mean_a_tool_magnitude = a_tool_sum / total;

        for (int epoch = 0; epoch < cfg.update.epochs_per_batch; ++epoch) {
            const LossGrad lg =
                hdpo_loss(batch, batch_adv, params, cfg.hp, cfg.update, mode);
            if (epoch == 0) m.loss = lg.loss;
            params = apply_update(std::move(params), lg.grad, cfg.update);
        }

        result.metrics.push_back(m);
        if (metrics_out.is_open()) {
            metrics_out << metrics_csv_row(m) << '\n';
        }
        if (!cfg.checkpoint_path.empty() && cfg.checkpoint_every > 0 &&
            (iter + 1) % cfg.checkpoint_every == 0) {
            save_checkpoint({params, run_config_hash(cfg),
                             static_cast<std::uint64_t>(iter + 1)},
                            cfg.checkpoint_path);
        }
    }

    if (!cfg.checkpoint_path.empty()) {
        save_checkpoint({params, run_config_hash(cfg),
                         static_cast<std::uint64_t>(cfg.iterations)},
                        cfg.checkpoint_path);
    }
    result.params = std::move(params);
    return result;
}

}  // namespace

TrainResult train(const RunConfig& cfg) {
    validate_run_config(cfg);
    return train_loop(cfg, initial_policy(cfg.env, cfg.init_tool_bias), 0);
}

TrainResult train_resumed(const RunConfig& cfg, const Checkpoint& ckpt) {
    validate_run_config(cfg);
    if (ckpt.config_hash != run_config_hash(cfg)) {
        throw std::runtime_error(
            "train_resumed: checkpoint was produced by a different run config");
    }
    if (ckpt.params.num_actions != cfg.env.num_actions()) {
        throw std::runtime_error("train_resumed: action-space size mismatch");
    }
    return train_loop(cfg, ckpt.params, static_cast<int>(ckpt.iteration));
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::string& parameter,
                            const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("sweep: values must be nonempty");
    }
    if (parameter != "alpha" && parameter != "w_tool") {
        throw std::invalid_argument("sweep: unknown parameter " + parameter);
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        RunConfig cfg = base;  // shared seed discipline: seed stays fixed
        if (parameter == "alpha") {
            cfg.hp.alpha = values[i];
        } else {
            cfg.hp.w_tool = values[i];
        }
        if (!base.metrics_path.empty()) {
            cfg.metrics_path =
                base.metrics_path + "." + parameter + "." + std::to_string(i);
        }
        if (!base.checkpoint_path.empty()) {
            cfg.checkpoint_path =
                base.checkpoint_path + "." + parameter + "." + std::to_string(i);
        }
        const TrainResult r = train(cfg);
        const IterationMetrics& last = r.metrics.back();
        rows.push_back({values[i], last.accuracy, last.tool_rate});
    }
    return rows;
}

std::vector<DiagnosticsRow> diagnose(const RunConfig& cfg,
                                     const PolicyParams& params,
                                     const std::vector<double>& alphas) {
    validate_run_config(cfg);
    EnvConfig env = cfg.env;
    env.seed = derive_seed(cfg.seed, kDiagnoseSalt);
    const std::vector<Prompt> prompts =
        generate_prompts(env, cfg.prompts_per_batch);
    PromptTable table;
    for (const Prompt& p : prompts) table.emplace(p.id, p);

    std::vector<DiagnosticsRow> rows;
    int group_id = 0;
    for (const Prompt& prompt : prompts) {
        const RolloutGroup group =
            rollout_group(params, prompt, env, cfg.hp.group_size);
        const std::vector<RewardBundle> bundles = score_group(group, table, cfg.hp);
        for (double alpha : alphas) {
            const VarianceReport vr =
                variance_diagnostics(bundles, alpha, cfg.hp.epsilon);
            rows.push_back({group_id, alpha, vr.sigma_acc_sq, vr.sigma_tool_sq,
                            vr.covariance, vr.taylor_residual_max});
        }
        ++group_id;
    }
    return rows;
}

void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_diagnostics_csv: cannot open " + path);
    }
    out << "group_id,alpha,sigma_acc_sq,sigma_tool_sq,cov,taylor_residual_max\n";
    out.precision(17);
    for (const DiagnosticsRow& r : rows) {
        out << r.group_id << ',' << r.alpha << ',' << r.sigma_acc_sq << ','
            << r.sigma_tool_sq << ',' << r.covariance << ',';
        if (r.taylor_residual_max.has_value()) {
            out << *r.taylor_residual_max;
        } else {
            out << "na";
        }
        out << '\n';
    }
}

EvalStats evaluate_policy(const PolicyParams& params, const EnvConfig& env,
                          int n_prompts, std::uint64_t eval_seed) {
    EnvConfig eval_env = env;
    eval_env.seed = eval_seed;
    const std::vector<Prompt> prompts = generate_prompts(eval_env, n_prompts);
    EvalStats s;
    int correct = 0, easy_correct = 0, hard_correct = 0;
    int with_tool = 0, easy_tool = 0, hard_tool = 0;
    long tool_calls_sum = 0;
    for (const Prompt& p : prompts) {
        const Trajectory t = rollout_one(params, p, eval_env, 0);
        const bool ok = judge(t, p).correct;
        const bool used_tool = t.tool_calls > 0;
        tool_calls_sum += t.tool_calls;
        if (ok) ++correct;
        if (used_tool) ++with_tool;
        if (p.difficulty == Difficulty::Easy) {
            ++s.easy_count;
            if (ok) ++easy_correct;
            if (used_tool) ++easy_tool;
        } else {
            ++s.hard_count;
            if (ok) ++hard_correct;
            if (used_tool) ++hard_tool;
        }
    }
    const double n = static_cast<double>(prompts.size());
    s.accuracy = correct / n;
    s.tool_rate = tool_calls_sum / n;
    s.tool_invocation_fraction = with_tool / n;
    if (s.easy_count > 0) {
        s.easy_accuracy = static_cast<double>(easy_correct) / s.easy_count;
        s.easy_tool_fraction = static_cast<double>(easy_tool) / s.easy_count;
    }
    if (s.hard_count > 0) {
        s.hard_accuracy = static_cast<double>(hard_correct) / s.hard_count;
        s.hard_tool_fraction = static_cast<double>(hard_tool) / s.hard_count;
    }
    return s;
}

}  // namespace hdpo
