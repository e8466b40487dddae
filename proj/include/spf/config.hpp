#pragma once
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spf/common.hpp"

namespace spf {

// -----------------------------------------------------------------------------
// Experiment configuration: flat key=value lines, '#' comments, later keys
// override earlier ones, CLI flags override the file. Keys:
//
//   x_list     = 1e6,1e7,1e8            (integers; scientific notation accepted)
//   y_rule     = fixed | power | ratio | exp_rule
//   y_value    = 100        (fixed)
//   alpha      = 4          (power: y = x^{1/alpha})
//   beta       = 30         (ratio: y = x/beta)
//   c          = 12         (exp_rule: y = exp(log x / (c loglog x)))
//   k_list     = 0,1,2,3
//   predictors = thm2,landau
//   out        = report.csv
//   cache_dir  = .spf-cache
// -----------------------------------------------------------------------------

enum class YRuleKind { fixed, power, ratio, exp_rule };

struct YRule {
    YRuleKind kind = YRuleKind::fixed;
    double param = 100.0;

    // Derived y, clamped into [2, x]; integer because the sieveColumn is integral.
    int64_t derive(int64_t x, bool* clamped = nullptr) const
    {
        double y = 0.0;
        const double xd = static_cast<double>(x);
        switch (kind) {
            case YRuleKind::fixed: y = param; break;
            case YRuleKind::power: y = std::pow(xd, 1.0 / param); break;
            case YRuleKind::ratio: y = xd / param; break;
            case YRuleKind::exp_rule:
                y = std::exp(std::log(xd) / (param * loglog(xd)));
                break;
        }
        const bool clamp = y < 2.0 || y > xd; // rule left the invariant 2 <= y <= x
        double rounded = std::floor(y + 0.5);
        if (rounded < 2.0) rounded = 2.0;
        if (rounded > xd) rounded = xd;
        if (clamped) *clamped = clamp;
        return static_cast<int64_t>(rounded);
    }
};

inline YRuleKind y_rule_from_name(const std::string& s)
{
    if (s == "fixed") return YRuleKind::fixed;
    if (s == "power") return YRuleKind::power;
    if (s == "ratio") return YRuleKind::ratio;
    if (s == "exp_rule") return YRuleKind::exp_rule;
    throw domain_error("unknown y_rule: " + s);
}

inline const char* y_rule_name(YRuleKind k)
{
    switch (k) {
        case YRuleKind::fixed: return "fixed";
        case YRuleKind::power: return "power";
        case YRuleKind::ratio: return "ratio";
        case YRuleKind::exp_rule: return "exp_rule";
    }
    return "?";
}

struct ExperimentConfig {
    std::vector<int64_t> x_list;
    YRule y_rule;
    std::vector<int64_t> k_list;
    std::vector<std::string> predictors;
    std::string out;
    std::string cache_dir;
};

inline std::map<std::string, std::string> parse_key_value_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw domain_error("config: cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r\n";
            const auto a = s.find_first_not_of(ws);
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(ws);
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline int64_t parse_count(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || v < 0 || v > 9.0e15 || v != std::floor(v))
        throw domain_error("expected a nonnegative integer, got: " + s);
    return static_cast<int64_t>(v);
}

inline ExperimentConfig config_from_kv(const std::map<std::string, std::string>& kv)
{
    ExperimentConfig cfg;
    if (auto it = kv.find("x_list"); it != kv.end())
        for (const auto& tok : split_list(it->second)) cfg.x_list.push_back(parse_count(tok));
    if (auto it = kv.find("y_rule"); it != kv.end()) cfg.y_rule.kind = y_rule_from_name(it->second);
    if (auto it = kv.find("y_value"); it != kv.end()) cfg.y_rule.param = std::strtod(it->second.c_str(), nullptr);
    if (auto it = kv.find("alpha"); it != kv.end() && cfg.y_rule.kind == YRuleKind::power)
        cfg.y_rule.param = std::strtod(it->second.c_str(), nullptr);
    if (auto it = kv.find("beta"); it != kv.end() && cfg.y_rule.kind == YRuleKind::ratio)
        cfg.y_rule.param = std::strtod(it->second.c_str(), nullptr);
    if (auto it = kv.find("c"); it != kv.end() && cfg.y_rule.kind == YRuleKind::exp_rule)
        cfg.y_rule.param = std::strtod(it->second.c_str(), nullptr);
    if (auto it = kv.find("k_list"); it != kv.end())
        for (const auto& tok : split_list(it->second)) cfg.k_list.push_back(parse_count(tok));
    if (auto it = kv.find("predictors"); it != kv.end()) cfg.predictors = split_list(it->second);
    if (auto it = kv.find("out"); it != kv.end()) cfg.out = it->second;
    if (auto it = kv.find("cache_dir"); it != kv.end()) cfg.cache_dir = it->second;
    return cfg;
}

// Cache directory resolution: explicit flag > SPF_CACHE_DIR > ./.spf-cache.
inline std::filesystem::path resolve_cache_dir(const std::string& flag_value)
{
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SPF_CACHE_DIR"); env && *env) return env;
    return ".spf-cache";
}

} // namespace spf
