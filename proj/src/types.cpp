#include "hdpo/types.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hdpo {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Coupled: return "coupled";
        case Mode::Decoupled: return "decoupled";
        case Mode::AccuracyOnly: return "accuracy_only";
    }
    throw std::logic_error("unknown mode");
}

Mode mode_from_string(const std::string& s) {
    if (s == "coupled") return Mode::Coupled;
    if (s == "decoupled") return Mode::Decoupled;
    if (s == "accuracy_only") return Mode::AccuracyOnly;
    throw std::invalid_argument("unknown mode: " + s);
}

std::vector<std::string> validate_group(const RolloutGroup& group,
                                        int tool_action, int max_turns) {
    std::vector<std::string> report;
    if (group.group_size < 2) {
        report.push_back("group_size must be >= 2, got " +
                         std::to_string(group.group_size));
    }
    if (static_cast<int>(group.trajectories.size()) != group.group_size) {
        report.push_back("trajectories length " +
                         std::to_string(group.trajectories.size()) +
                         " does not equal group_size " +
                         std::to_string(group.group_size));
    }
    for (std::size_t i = 0; i < group.trajectories.size(); ++i) {
        const Trajectory& t = group.trajectories[i];
        const std::string tag = "trajectory " + std::to_string(i) + ": ";
        if (t.prompt_id != group.prompt_id) {
            report.push_back(tag + "prompt_id mismatch with group");
        }
        int tool_steps = 0;
        for (const Step& s : t.steps) {
            if (s.action == tool_action) ++tool_steps;
        }
        if (tool_steps != t.tool_calls) {
            report.push_back(tag + "tool_calls=" + std::to_string(t.tool_calls) +
                             " but steps contain " + std::to_string(tool_steps) +
                             " tool actions");
        }
        if (t.tool_calls > max_turns) {
            report.push_back(tag + "tool_calls exceeds max_turns=" +
                             std::to_string(max_turns));
        }
        if (!t.truncated) {
            if (t.steps.empty()) {
                report.push_back(tag + "non-truncated trajectory has no steps");
            } else if (t.steps.back().action == tool_action) {
                report.push_back(tag +
                                 "non-truncated trajectory ends with a tool action");
            }
            if (!t.final_answer.has_value()) {
                report.push_back(tag + "non-truncated trajectory lacks final_answer");
            }
        }
    }
    return report;
}

void to_json(nlohmann::json& j, const Step& s) {
    j = nlohmann::json{{"state", s.state}, {"action", s.action}, {"logp", s.logp}};
}

void from_json(const nlohmann::json& j, Step& s) {
    j.at("state").get_to(s.state);
    j.at("action").get_to(s.action);
    j.at("logp").get_to(s.logp);
}

void to_json(nlohmann::json& j, const Trajectory& t) {
    j = nlohmann::json{{"prompt_id", t.prompt_id},
                       {"steps", t.steps},
                       {"tool_calls", t.tool_calls},
                       {"truncated", t.truncated}};
    if (t.final_answer.has_value()) {
        j["final_answer"] = *t.final_answer;
    } else {
        j["final_answer"] = nullptr;
    }
}

void from_json(const nlohmann::json& j, Trajectory& t) {
    j.at("prompt_id").get_to(t.prompt_id);
    j.at("steps").get_to(t.steps);
    j.at("tool_calls").get_to(t.tool_calls);
    j.at("truncated").get_to(t.truncated);
    if (j.at("final_answer").is_null()) {
        t.final_answer.reset();
    } else {
        t.final_answer = j.at("final_answer").get<int>();
    }
}

void to_json(nlohmann::json& j, const RolloutGroup& g) {
    j = nlohmann::json{{"prompt_id", g.prompt_id},
                       {"trajectories", g.trajectories},
                       {"group_size", g.group_size}};
}

void from_json(const nlohmann::json& j, RolloutGroup& g) {
    j.at("prompt_id").get_to(g.prompt_id);
    j.at("trajectories").get_to(g.trajectories);
    j.at("group_size").get_to(g.group_size);
}

void to_json(nlohmann::json& j, const Prompt& p) {
    j = nlohmann::json{
        {"id", p.id},
        {"difficulty", p.difficulty == Difficulty::Easy ? "easy" : "hard"},
        {"answer_key", p.answer_key},
        {"observation_code", p.observation_code}};
}

void from_json(const nlohmann::json& j, Prompt& p) {
    j.at("id").get_to(p.id);
    const std::string d = j.at("difficulty").get<std::string>();
    if (d == "easy") {
        p.difficulty = Difficulty::Easy;
    } else if (d == "hard") {
        p.difficulty = Difficulty::Hard;
    } else {
        throw std::invalid_argument("unknown difficulty: " + d);
    }
    j.at("answer_key").get_to(p.answer_key);
    j.at("observation_code").get_to(p.observation_code);
}

std::string trajectory_to_jsonl(const Trajectory& t) {
    nlohmann::json j = t;
    return j.dump();
}

Trajectory trajectory_from_jsonl(const std::string& line) {
    return nlohmann::json::parse(line).get<Trajectory>();
}

}  // namespace hdpo
