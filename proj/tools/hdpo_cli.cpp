// Command-line driver for ToolWorld training runs, sweeps, diagnostics and
// prompt curation. All outputs are CSV or JSONL; downstream tooling plots.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hdpo/config.hpp"
#include "hdpo/curation.hpp"
#include "hdpo/trainer.hpp"

namespace {

hdpo::RunConfig resolve_config(const std::string& config_path,
                               const std::vector<std::string>& overrides) {
    hdpo::RunConfig cfg;
    if (!config_path.empty()) {
        cfg = hdpo::load_run_config(config_path);
    }
    for (const std::string& o : overrides) {
        hdpo::apply_override(cfg, o);
    }
    return cfg;
}

std::vector<hdpo::Prompt> read_prompts_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prompt file " + path);
    std::vector<hdpo::Prompt> prompts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        prompts.push_back(nlohmann::json::parse(line).get<hdpo::Prompt>());
    }
    return prompts;
}

void write_prompts_jsonl(const std::vector<hdpo::Prompt>& prompts,
                         const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    for (const hdpo::Prompt& p : prompts) {
        out << nlohmann::json(p).dump() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ToolWorld policy-optimization laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "JSON config file (sections env/hp/update/run)");
    app.add_option("--set", overrides, "override a config field, e.g. --set hp.w_tool=0.2");

    auto* train_cmd = app.add_subcommand("train", "run one training loop");
    std::string resume_path;
    bool dump_trajectories = false;
    train_cmd->add_option("--resume", resume_path, "checkpoint to resume from");
    train_cmd->add_flag("--dump-trajectories", dump_trajectories,
                        "write every sampled trajectory as JSONL");

    auto* sweep_cmd = app.add_subcommand("sweep", "train once per parameter value");
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string sweep_out;
    sweep_cmd->add_option("--parameter", sweep_param, "alpha or w_tool")->required();
    sweep_cmd->add_option("--values", sweep_values, "parameter values")->required();
    sweep_cmd->add_option("--out", sweep_out, "sweep table CSV path");

    auto* diag_cmd = app.add_subcommand("diagnose", "variance diagnostics per group");
    std::vector<double> diag_alphas;
    std::string diag_out;
    std::string diag_checkpoint;
    diag_cmd->add_option("--alphas", diag_alphas, "alpha grid")->required();
    diag_cmd->add_option("--out", diag_out, "diagnostics CSV path")->required();
    diag_cmd->add_option("--checkpoint", diag_checkpoint,
                         "score with a trained policy instead of a fresh one");

    auto* curate_cmd = app.add_subcommand("curate", "filter a prompt set");
    std::string curate_in, curate_out, curate_report, curate_filter = "solvability";
    int curate_k = 8;
    std::string curate_checkpoint;
    curate_cmd->add_option("--prompts", curate_in, "input prompt JSONL")->required();
    curate_cmd->add_option("--out", curate_out, "retained prompt JSONL")->required();
    curate_cmd->add_option("--report", curate_report, "pass@k report CSV");
    curate_cmd->add_option("--filter", curate_filter, "solvability or calibration");
    curate_cmd->add_option("-k,--rollouts", curate_k, "rollouts per prompt");
    curate_cmd->add_option("--checkpoint", curate_checkpoint,
                           "policy checkpoint to filter against");

    auto* gen_cmd = app.add_subcommand("gen-prompts", "export a prompt set as JSONL");
    int gen_n = 0;
    std::string gen_out;
    gen_cmd->add_option("-n,--count", gen_n, "number of prompts")->required();
    gen_cmd->add_option("--out", gen_out, "output JSONL path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        hdpo::RunConfig cfg = resolve_config(config_path, overrides);

        if (*train_cmd) {
            if (dump_trajectories && cfg.trajectory_dump_path.empty()) {
                cfg.trajectory_dump_path = "trajectories.jsonl";
            }
            if (!dump_trajectories) cfg.trajectory_dump_path.clear();
            hdpo::TrainResult result;
            if (!resume_path.empty()) {
                const hdpo::Checkpoint ckpt =
                    hdpo::load_checkpoint(resume_path, cfg.env.num_actions());
                result = hdpo::train_resumed(cfg, ckpt);
            } else {
                result = hdpo::train(cfg);
            }
            const hdpo::IterationMetrics& last = result.metrics.back();
            std::cout << "final accuracy=" << last.accuracy
                      << " tool_rate=" << last.tool_rate
                      << " tool_invocation_fraction=" << last.tool_invocation_fraction
                      << '\n';
        } else if (*sweep_cmd) {
            const std::vector<hdpo::SweepRow> rows =
                hdpo::sweep(cfg, sweep_param, sweep_values);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!sweep_out.empty()) {
                file.open(sweep_out);
                if (!file) throw std::runtime_error("cannot open " + sweep_out);
                os = &file;
            }
            *os << sweep_param << ",accuracy,tool_rate\n";
            os->precision(17);
            for (const hdpo::SweepRow& r : rows) {
                *os << r.value << ',' << r.accuracy << ',' << r.tool_rate << '\n';
            }
        } else if (*diag_cmd) {
            hdpo::PolicyParams params =
                diag_checkpoint.empty()
                    ? hdpo::initial_policy(cfg.env, cfg.init_tool_bias)
                    : hdpo::load_checkpoint(diag_checkpoint, cfg.env.num_actions())
                          .params;
            const auto rows = hdpo::diagnose(cfg, params, diag_alphas);
            hdpo::write_diagnostics_csv(rows, diag_out);
        } else if (*curate_cmd) {
            const std::vector<hdpo::Prompt> prompts = read_prompts_jsonl(curate_in);
            hdpo::PolicyParams params =
                curate_checkpoint.empty()
                    ? hdpo::initial_policy(cfg.env, cfg.init_tool_bias)
                    : hdpo::load_checkpoint(curate_checkpoint, cfg.env.num_actions())
                          .params;
            std::vector<hdpo::Prompt> retained;
            const bool tool_enabled = curate_filter == "calibration";
            if (curate_filter == "solvability") {
                retained = hdpo::solvability_filter(prompts, params, cfg.env, curate_k);
            } else if (curate_filter == "calibration") {
                retained = hdpo::difficulty_calibration_filter(prompts, params,
                                                               cfg.env, curate_k);
            } else {
                throw std::invalid_argument("unknown filter: " + curate_filter);
            }
            write_prompts_jsonl(retained, curate_out);
            if (!curate_report.empty()) {
                std::ofstream rep(curate_report);
                if (!rep) throw std::runtime_error("cannot open " + curate_report);
                rep << "prompt_id,k,successes,pass_rate\n";
                for (const hdpo::Prompt& p : prompts) {
                    const hdpo::PassAtKReport r =
                        hdpo::pass_at_k(params, p, cfg.env, curate_k, tool_enabled);
                    rep << r.prompt_id << ',' << r.k << ',' << r.successes << ','
                        << r.pass_rate << '\n';
                }
            }
            std::cout << "retained " << retained.size() << " of " << prompts.size()
                      << " prompts\n";
        } else if (*gen_cmd) {
            const std::vector<hdpo::Prompt> prompts =
                hdpo::generate_prompts(cfg.env, gen_n);
            write_prompts_jsonl(prompts, gen_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
