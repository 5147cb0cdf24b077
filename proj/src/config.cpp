#include "hdpo/config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hdpo {

namespace {

using nlohmann::json;

json to_json_tree(const RunConfig& cfg) {
    json j;
    j["env"] = {{"num_answers", cfg.env.num_answers},
                {"max_turns", cfg.env.max_turns},
                {"p_hard", cfg.env.p_hard},
                {"p_reveal", cfg.env.p_reveal},
                {"easy_signal_noise", cfg.env.easy_signal_noise},
                {"seed", cfg.env.seed}};
    j["hp"] = {{"lambda_a", cfg.hp.lambda_a},
               {"lambda_f", cfg.hp.lambda_f},
               {"alpha", cfg.hp.alpha},
               {"w_acc", cfg.hp.w_acc},
               {"w_tool", cfg.hp.w_tool},
               {"epsilon", cfg.hp.epsilon},
               {"clip_ratio", cfg.hp.clip_ratio},
               {"learning_rate", cfg.hp.learning_rate},
               {"group_size", cfg.hp.group_size}};
    j["update"] = {{"learning_rate", cfg.update.learning_rate},
                   {"clip_ratio", cfg.update.clip_ratio},
                   {"epochs_per_batch", cfg.update.epochs_per_batch}};
    if (cfg.update.max_grad_norm.has_value()) {
        j["update"]["max_grad_norm"] = *cfg.update.max_grad_norm;
    } else {
        j["update"]["max_grad_norm"] = nullptr;
    }
    j["run"] = {{"mode", to_string(cfg.mode)},
                {"iterations", cfg.iterations},
                {"prompts_per_batch", cfg.prompts_per_batch},
                {"fixed_prompt_set", cfg.fixed_prompt_set},
                {"init_tool_bias", cfg.init_tool_bias},
                {"seed", cfg.seed},
                {"metrics_path", cfg.metrics_path},
                {"checkpoint_path", cfg.checkpoint_path},
                {"checkpoint_every", cfg.checkpoint_every},
                {"trajectory_dump_path", cfg.trajectory_dump_path}};
    return j;
}

template <typename T>
void read_field(const json& section, const char* key, T& out) {
    if (section.contains(key) && !section.at(key).is_null()) {
        section.at(key).get_to(out);
    }
}

RunConfig from_json_tree(const json& j) {
    RunConfig cfg;
    if (j.contains("env")) {
        const json& e = j.at("env");
        read_field(e, "num_answers", cfg.env.num_answers);
        read_field(e, "max_turns", cfg.env.max_turns);
        read_field(e, "p_hard", cfg.env.p_hard);
        read_field(e, "p_reveal", cfg.env.p_reveal);
        read_field(e, "easy_signal_noise", cfg.env.easy_signal_noise);
        read_field(e, "seed", cfg.env.seed);
    }
    if (j.contains("hp")) {
        const json& h = j.at("hp");
        read_field(h, "lambda_a", cfg.hp.lambda_a);
        read_field(h, "lambda_f", cfg.hp.lambda_f);
        read_field(h, "alpha", cfg.hp.alpha);
        read_field(h, "w_acc", cfg.hp.w_acc);
        read_field(h, "w_tool", cfg.hp.w_tool);
        read_field(h, "epsilon", cfg.hp.epsilon);
        read_field(h, "clip_ratio", cfg.hp.clip_ratio);
        read_field(h, "learning_rate", cfg.hp.learning_rate);
        read_field(h, "group_size", cfg.hp.group_size);
    }
    if (j.contains("update")) {
        const json& u = j.at("update");
        read_field(u, "learning_rate", cfg.update.learning_rate);
        read_field(u, "clip_ratio", cfg.update.clip_ratio);
        read_field(u, "epochs_per_batch", cfg.update.epochs_per_batch);
        if (u.contains("max_grad_norm") && !u.at("max_grad_norm").is_null()) {
            cfg.update.max_grad_norm = u.at("max_grad_norm").get<double>();
        }
    }
    if (j.contains("run")) {
        const json& r = j.at("run");
        if (r.contains("mode")) {
            cfg.mode = mode_from_string(r.at("mode").get<std::string>());
        }
        read_field(r, "iterations", cfg.iterations);
        read_field(r, "prompts_per_batch", cfg.prompts_per_batch);
        read_field(r, "fixed_prompt_set", cfg.fixed_prompt_set);
        read_field(r, "init_tool_bias", cfg.init_tool_bias);
        read_field(r, "seed", cfg.seed);
        read_field(r, "metrics_path", cfg.metrics_path);
        read_field(r, "checkpoint_path", cfg.checkpoint_path);
        read_field(r, "checkpoint_every", cfg.checkpoint_every);
        read_field(r, "trajectory_dump_path", cfg.trajectory_dump_path);
    }
    return cfg;
}

}  // namespace

RunConfig run_config_from_json_text(const std::string& text) {
    return from_json_tree(json::parse(text));
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_run_config: cannot open " + path);
    }
    json j;
    in >> j;
    return from_json_tree(j);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw std::invalid_argument("override must look like section.key=value: " +
                                    assignment);
    }
    const std::string section = assignment.substr(0, dot);
    const std::string key = assignment.substr(dot + 1, eq - dot - 1);
    const std::string value = assignment.substr(eq + 1);

    json tree = to_json_tree(cfg);
    if (!tree.contains(section) || !tree.at(section).contains(key)) {
        throw std::invalid_argument("unknown config field: " + section + "." + key);
    }
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // bare strings (paths, mode names) need no quotes
    }
    if (parsed.is_string() && !tree.at(section).at(key).is_string() &&
        !(section == "update" && key == "max_grad_norm") &&
        !(section == "run" && key == "mode")) {
        throw std::invalid_argument("field " + section + "." + key +
                                    " expects a non-string value");
    }
    tree[section][key] = parsed;
    cfg = from_json_tree(tree);
}

std::string run_config_to_json_text(const RunConfig& cfg) {
    return to_json_tree(cfg).dump(2);
}

}  // namespace hdpo
