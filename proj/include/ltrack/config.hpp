#ifndef LTRACK_CONFIG_HPP
#define LTRACK_CONFIG_HPP

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ltrack/metrics.hpp"
#include "ltrack/orchestrator.hpp"
#include "ltrack/sequence_io.hpp"

namespace ltrack {

/// Flat `key = value` run configuration. Every knob has a default; unknown
/// keys are errors.
struct Config {
    // tracker
    double tau_nf = 0.10;
    double tau_u = 0.25;
    double rho = 0.80;
    double delta_peak_frac = 0.30;
    double lambda = 0.01;
    int capacity = 50;
    double mu = 0.01;
    double search_scale = 5.0;

    // erase consensus
    bool enable_consensus = true;
    int consensus_k = 8;
    double erase_min_frac = 0.05;
    double erase_max_frac = 0.15;
    std::string erase_fill = "mean";  // "mean" or a number in [0,1]
    double iou_agree = 0.5;
    double agree_min = 0.6;
    int consensus_every_n = 1;
    bool consensus_allow_upgrade = false;

    // re-detection
    bool enable_random_search = true;
    bool enable_penalty = true;
    double redetect_beta = 0.2;
    int redetect_n_min = 2;
    int redetect_n_max = 10;
    double w_b = 0.99;
    double w_d = 0.85;
    double w_t = 0.02;
    double tau_redet = 0.25;

    // background augmentation
    bool enable_bg_augment = true;
    int aug_n_first = 5;
    int aug_n_online = 2;
    double tau_aug = 0.5;
    double aug_online_weight = 0.5;
    std::string bg_pool_dir;

    // orchestrator / evaluation
    int lost_after = 3;
    int eval_thresholds = 101;

    // seeds (0 = derive from the global seed)
    std::uint64_t seed = 1;
    std::uint64_t erase_seed = 0;
    std::uint64_t redetect_seed = 0;
    std::uint64_t augment_seed = 0;

    static Config defaults() { return {}; }

    OrchestratorConfig orchestrator() const {
        OrchestratorConfig c;
        c.tracker.tau_nf = tau_nf;
        c.tracker.tau_u = tau_u;
        c.tracker.rho = rho;
        c.tracker.delta_peak_frac = delta_peak_frac;
        c.tracker.learning_rate = lambda;
        c.tracker.capacity = capacity;
        c.tracker.mu = mu;
        c.tracker.search_scale = search_scale;

        c.erase.k = consensus_k;
        c.erase.min_frac = erase_min_frac;
        c.erase.max_frac = erase_max_frac;
        if (erase_fill != "mean") c.erase.fill = std::stod(erase_fill);
        c.erase.iou_agree = iou_agree;
        c.erase.agree_min = agree_min;
        c.erase.rng_seed = erase_seed;

        c.redetect.beta = redetect_beta;
        c.redetect.n_min = redetect_n_min;
        c.redetect.n_max = redetect_n_max;
        c.redetect.tau_redet = tau_redet;
        c.redetect.rng_seed = redetect_seed;

        c.penalty.w_b = w_b;
        c.penalty.w_d = w_d;
        c.penalty.w_t = w_t;

        c.augment.n_first = aug_n_first;
        c.augment.n_online = aug_n_online;
        c.augment.tau_aug = tau_aug;
        c.augment.online_weight = aug_online_weight;
        c.augment.bg_pool_dir = bg_pool_dir;
        c.augment.rng_seed = augment_seed;

        c.lost_after = lost_after;
        c.consensus_every_n = consensus_every_n;
        c.consensus_allow_upgrade = consensus_allow_upgrade;
        c.enable_consensus = enable_consensus;
        c.enable_random_search = enable_random_search;
        c.enable_penalty = enable_penalty;
        c.enable_bg_augment = enable_bg_augment;
        c.seed = seed;
        c.validate();
        return c;
    }

    std::vector<double> thresholds() const { return uniform_thresholds(eval_thresholds); }

    std::string dump() const;
    static Config parse(const std::string& text);
    static Config load(const std::string& path);
};

namespace config_detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);  // shortest round-trip form
}

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::runtime_error("config: bad boolean for '" + key + "': " + v);
}

struct Field {
    std::function<std::string(const Config&)> get;
    std::function<void(Config&, const std::string&)> set;
};

inline const std::vector<std::pair<std::string, Field>>& fields() {
    auto dbl = [](double Config::*m) {
        return Field{[m](const Config& c) { return format_double(c.*m); },
                     [m](Config& c, const std::string& v) { c.*m = std::stod(v); }};
    };
    auto integer = [](int Config::*m) {
        return Field{[m](const Config& c) { return std::to_string(c.*m); },
                     [m](Config& c, const std::string& v) { c.*m = std::stoi(v); }};
    };
    auto u64 = [](std::uint64_t Config::*m) {
        return Field{[m](const Config& c) { return std::to_string(c.*m); },
                     [m](Config& c, const std::string& v) { c.*m = std::stoull(v); }};
    };
    auto boolean = [](bool Config::*m) {
        return Field{[m](const Config& c) { return std::string(c.*m ? "true" : "false"); },
                     [m](Config& c, const std::string& v) {
                         c.*m = parse_bool(v, "bool");
                     }};
    };
    auto str = [](std::string Config::*m) {
        return Field{[m](const Config& c) { return c.*m; },
                     [m](Config& c, const std::string& v) { c.*m = v; }};
    };

    static const std::vector<std::pair<std::string, Field>> f = {
        {"tau_nf", dbl(&Config::tau_nf)},
        {"tau_u", dbl(&Config::tau_u)},
        {"rho", dbl(&Config::rho)},
        {"delta_peak_frac", dbl(&Config::delta_peak_frac)},
        {"lambda", dbl(&Config::lambda)},
        {"capacity", integer(&Config::capacity)},
        {"mu", dbl(&Config::mu)},
        {"search_scale", dbl(&Config::search_scale)},
        {"enable_consensus", boolean(&Config::enable_consensus)},
        {"consensus_k", integer(&Config::consensus_k)},
        {"erase_min_frac", dbl(&Config::erase_min_frac)},
        {"erase_max_frac", dbl(&Config::erase_max_frac)},
        {"erase_fill", str(&Config::erase_fill)},
        {"iou_agree", dbl(&Config::iou_agree)},
        {"agree_min", dbl(&Config::agree_min)},
        {"consensus_every_n", integer(&Config::consensus_every_n)},
        {"consensus_allow_upgrade", boolean(&Config::consensus_allow_upgrade)},
        {"enable_random_search", boolean(&Config::enable_random_search)},
        {"enable_penalty", boolean(&Config::enable_penalty)},
        {"redetect_beta", dbl(&Config::redetect_beta)},
        {"redetect_n_min", integer(&Config::redetect_n_min)},
        {"redetect_n_max", integer(&Config::redetect_n_max)},
        {"w_b", dbl(&Config::w_b)},
        {"w_d", dbl(&Config::w_d)},
        {"w_t", dbl(&Config::w_t)},
        {"tau_redet", dbl(&Config::tau_redet)},
        {"enable_bg_augment", boolean(&Config::enable_bg_augment)},
        {"aug_n_first", integer(&Config::aug_n_first)},
        {"aug_n_online", integer(&Config::aug_n_online)},
        {"tau_aug", dbl(&Config::tau_aug)},
        {"aug_online_weight", dbl(&Config::aug_online_weight)},
        {"bg_pool_dir", str(&Config::bg_pool_dir)},
        {"lost_after", integer(&Config::lost_after)},
        {"eval_thresholds", integer(&Config::eval_thresholds)},
        {"seed", u64(&Config::seed)},
        {"erase_seed", u64(&Config::erase_seed)},
        {"redetect_seed", u64(&Config::redetect_seed)},
        {"augment_seed", u64(&Config::augment_seed)},
    };
    return f;
}

}  // namespace config_detail

inline std::string Config::dump() const {
    std::ostringstream os;
    for (const auto& [key, field] : config_detail::fields())
        os << key << " = " << field.get(*this) << "\n";
    return os.str();
}

inline Config Config::parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));
        bool known = false;
        for (const auto& [k, field] : config_detail::fields()) {
            if (k == key) {
                try {
                    field.set(c, val);
                } catch (const std::exception& e) {
                    throw std::runtime_error("config: bad value for '" + key + "': " + val);
                }
                known = true;
                break;
            }
        }
        if (!known) throw std::runtime_error("config: unknown key '" + key + "'");
    }
    return c;
}

inline Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace ltrack

#endif  // LTRACK_CONFIG_HPP
