#include "hdpo/curation.hpp"

#include <stdexcept>

#include "hdpo/rewards.hpp"

namespace hdpo {

PassAtKReport pass_at_k(const PolicyParams& params, const Prompt& prompt,
                        const EnvConfig& cfg, int k, bool tool_enabled) {
    if (k < 1) throw std::invalid_argument("pass_at_k: k must be >= 1");
    PassAtKReport report;
    report.prompt_id = prompt.id;
    report.k = k;
    for (int j = 0; j < k; ++j) {
        const Trajectory t = rollout_one(params, prompt, cfg,
                                         static_cast<std::uint64_t>(j), tool_enabled);
        if (judge(t, prompt).correct) ++report.successes;
    }
    report.pass_rate = static_cast<double>(report.successes) / k;
    return report;
}

std::vector<Prompt> solvability_filter(std::span<const Prompt> prompts,
                                       const PolicyParams& params,
                                       const EnvConfig& cfg, int k) {
    std::vector<Prompt> retained;
    for (const Prompt& p : prompts) {
        const PassAtKReport r = pass_at_k(params, p, cfg, k, /*tool_enabled=*/false);
        if (r.successes < r.k) retained.push_back(p);
    }
    return retained;
}

std::vector<Prompt> difficulty_calibration_filter(std::span<const Prompt> prompts,
                                                  const PolicyParams& params,
                                                  const EnvConfig& cfg, int G) {
    if (G < 2) {
        throw std::invalid_argument("difficulty_calibration_filter: G must be >= 2");
    }
    std::vector<Prompt> retained;
    for (const Prompt& p : prompts) {
        const PassAtKReport r = pass_at_k(params, p, cfg, G, /*tool_enabled=*/true);
        if (r.successes > 0 && r.successes < r.k) retained.push_back(p);
    }
    return retained;
}

}  // namespace hdpo
