#include "hdpo/advantages.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hdpo {

namespace {

void require_group_length(std::size_t n, const char* op) {
    if (n < 2) {
        throw std::invalid_argument(std::string(op) +
                                    ": group length must be >= 2, got " +
                                    std::to_string(n));
    }
}

void require_epsilon(double epsilon, const char* op) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument(std::string(op) + ": epsilon must be > 0");
    }
}

}  // namespace

Moments population_moments(std::span<const double> values) {
    Moments m;
    const double n = static_cast<double>(values.size());
    for (double v : values) m.mean += v;
    m.mean /= n;
    for (double v : values) {
        const double d = v - m.mean;
        m.variance += d * d;
    }
    m.variance /= n;
    m.stddev = std::sqrt(m.variance);
    return m;
}

std::vector<double> grpo_advantage(std::span<const double> rewards, double epsilon) {
    require_group_length(rewards.size(), "grpo_advantage");
    require_epsilon(epsilon, "grpo_advantage");
    const Moments m = population_moments(rewards);
    std::vector<double> out;
    out.reserve(rewards.size());
    for (double r : rewards) {
        out.push_back((r - m.mean) / (m.stddev + epsilon));
    }
    return out;
}

std::vector<double> mixed_advantage(std::span<const RewardBundle> bundles,
                                    double alpha, double epsilon) {
    require_group_length(bundles.size(), "mixed_advantage");
    std::vector<double> mix;
    mix.reserve(bundles.size());
    for (const RewardBundle& b : bundles) {
        mix.push_back(b.r_acc + alpha * b.r_tool);
    }
    return grpo_advantage(mix, epsilon);
}

std::vector<std::size_t> qualifying_set(std::span<const RewardBundle> bundles) {
    std::vector<std::size_t> q;
    for (std::size_t j = 0; j < bundles.size(); ++j) {
        if (bundles[j].r_ans > 0.0) q.push_back(j);
    }
    return q;
}

std::vector<double> conditional_tool_advantage(
    std::span<const RewardBundle> bundles, double epsilon) {
    require_group_length(bundles.size(), "conditional_tool_advantage");
    require_epsilon(epsilon, "conditional_tool_advantage");
    std::vector<double> out(bundles.size(), 0.0);
    const std::vector<std::size_t> q = qualifying_set(bundles);
    if (q.size() < 2) return out;  // no meaningful within-group comparison
    std::vector<double> tool;
    tool.reserve(q.size());
    for (std::size_t j : q) tool.push_back(bundles[j].r_tool);
    const Moments m = population_moments(tool);
    for (std::size_t i = 0; i < q.size(); ++i) {
        out[q[i]] = (tool[i] - m.mean) / (m.stddev + epsilon);
    }
    return out;
}

VarianceReport variance_diagnostics(std::span<const RewardBundle> bundles,
                                    double alpha, double epsilon) {
    require_group_length(bundles.size(), "variance_diagnostics");
    require_epsilon(epsilon, "variance_diagnostics");
    const std::size_t n = bundles.size();

    std::vector<double> acc(n), tool(n), mix(n);
    for (std::size_t i = 0; i < n; ++i) {
        acc[i] = bundles[i].r_acc;
        tool[i] = bundles[i].r_tool;
        mix[i] = bundles[i].r_acc + alpha * bundles[i].r_tool;
    }
    const Moments ma = population_moments(acc);
    const Moments mt = population_moments(tool);
    const Moments mm = population_moments(mix);

    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (acc[i] - ma.mean) * (tool[i] - mt.mean);
    }
    cov /= static_cast<double>(n);

    VarianceReport report;
    report.alpha = alpha;
    report.sigma_acc_sq = ma.variance;
    report.sigma_tool_sq = mt.variance;
    report.covariance = cov;
    report.var_mix_direct = mm.variance;
    report.var_mix_decomposed =
        ma.variance + alpha * alpha * mt.variance + 2.0 * alpha * cov;

    if (ma.variance > 0.0) {
        const std::vector<double> a_mix = grpo_advantage(mix, epsilon);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Same epsilon convention as the estimator itself.
            const double a_acc_ref = (acc[i] - ma.mean) / (ma.stddev + epsilon);
            worst = std::max(worst, std::abs(a_mix[i] - a_acc_ref));
        }
        report.taylor_residual_max = worst;
    }
    return report;
}

std::vector<AdvantageBundle> advantages_for_group(
    std::span<const RewardBundle> bundles, const HyperParams& hp, Mode mode) {
    if (static_cast<int>(bundles.size()) != hp.group_size) {
        throw std::invalid_argument(
            "advantages_for_group: bundle count " + std::to_string(bundles.size()) +
            " does not match group_size " + std::to_string(hp.group_size));
    }
    std::vector<AdvantageBundle> out(bundles.size());
    for (std::size_t j : qualifying_set(bundles)) {
        out[j].in_qualifying_set = true;
    }
    switch (mode) {
        case Mode::AccuracyOnly: {
            std::vector<double> acc;
            acc.reserve(bundles.size());
            for (const RewardBundle& b : bundles) acc.push_back(b.r_acc);
            const std::vector<double> a = grpo_advantage(acc, hp.epsilon);
            for (std::size_t i = 0; i < a.size(); ++i) out[i].a_acc = a[i];
            break;
        }
        case Mode::Coupled: {
            const std::vector<double> a = mixed_advantage(bundles, hp.alpha, hp.epsilon);
            for (std::size_t i = 0; i < a.size(); ++i) out[i].a_mix = a[i];
            break;
        }
        case Mode::Decoupled: {
            std::vector<double> acc;
            acc.reserve(bundles.size());
            for (const RewardBundle& b : bundles) acc.push_back(b.r_acc);
            const std::vector<double> a = grpo_advantage(acc, hp.epsilon);
            const std::vector<double> t =
                conditional_tool_advantage(bundles, hp.epsilon);
            for (std::size_t i = 0; i < a.size(); ++i) {
                out[i].a_acc = a[i];
                out[i].a_tool = t[i];
            }
            break;
        }
    }
    return out;
}

}  // namespace hdpo
