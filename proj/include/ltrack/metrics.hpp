#ifndef LTRACK_METRICS_HPP
#define LTRACK_METRICS_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrack/geometry.hpp"

namespace ltrack {

/// Tracking precision / recall / F-measure over a confidence-threshold sweep.
struct MetricCurve {
    std::vector<double> thresholds;
    std::vector<double> pr;
    std::vector<double> re;
    std::vector<double> f;
    double f_max = 0.0;
    double tau_star = 0.0;
};

inline std::vector<double> uniform_thresholds(int count) {
    if (count < 2) throw std::invalid_argument("thresholds: need at least 2");
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / (count - 1);
    return t;
}

/// Long-term tracking metrics.
///
/// For each threshold tau:
///   Pr(tau) = mean IoU over frames reported with confidence >= tau, where a
///             report on a ground-truth-absent frame contributes IoU 0;
///   Re(tau) = sum of IoU over gt-present frames with confidence >= tau,
///             divided by the number of gt-present frames;
///   F(tau)  = harmonic mean (0 when both terms are 0).
inline MetricCurve compute_curve(std::span<const BBox> pred, std::span<const double> confidence,
                                 std::span<const std::optional<BBox>> gt,
                                 std::span<const double> thresholds) {
    if (pred.size() != confidence.size() || pred.size() != gt.size())
        throw std::invalid_argument("compute_curve: length mismatch");

    MetricCurve c;
    c.thresholds.assign(thresholds.begin(), thresholds.end());
    const std::size_t n = pred.size();

    std::size_t gt_present = 0;
    for (const auto& g : gt)
        if (g) ++gt_present;

    c.pr.reserve(thresholds.size());
    c.re.reserve(thresholds.size());
    c.f.reserve(thresholds.size());
    bool first = true;
    for (double tau : thresholds) {
        double sum_iou = 0.0;
        std::size_t reported = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (confidence[i] < tau) continue;
            ++reported;
            if (gt[i]) sum_iou += iou(pred[i], *gt[i]);
        }
        const double pr = reported > 0 ? sum_iou / static_cast<double>(reported) : 0.0;
        const double re = gt_present > 0 ? sum_iou / static_cast<double>(gt_present) : 0.0;
        const double f = (pr + re) > 0.0 ? 2.0 * pr * re / (pr + re) : 0.0;
        c.pr.push_back(pr);
        c.re.push_back(re);
        c.f.push_back(f);
        if (first || f > c.f_max) {
            c.f_max = f;
            c.tau_star = tau;
            first = false;
        }
    }
    return c;
}

struct SequenceEval {
    std::string name;
    double f_max = 0.0;
    std::set<std::string> attributes;
};

/// Mean f_max per attribute tag; sequences with no tags contribute only to
/// the overall mean (computed separately). Unknown tags pass through.
inline std::map<std::string, double> attribute_average(std::span<const SequenceEval> seqs) {
    std::map<std::string, double> sum;
    std::map<std::string, int> cnt;
    for (const auto& s : seqs) {
        for (const auto& a : s.attributes) {
            sum[a] += s.f_max;
            cnt[a] += 1;
        }
    }
    std::map<std::string, double> out;
    for (const auto& [k, v] : sum) out[k] = v / cnt[k];
    return out;
}

inline double overall_mean_fmax(std::span<const SequenceEval> seqs) {
    if (seqs.empty()) return 0.0;
    double s = 0.0;
    for (const auto& e : seqs) s += e.f_max;
    return s / static_cast<double>(seqs.size());
}

}  // namespace ltrack

#endif  // LTRACK_METRICS_HPP
