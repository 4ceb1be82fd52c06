#include "autoglosh/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace autoglosh {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

double precision_at_n(std::span<const double> scores, const GroundTruth& truth,
                      std::optional<std::size_t> n) {
    if (scores.size() != truth.size()) {
        throw std::invalid_argument("scores and ground truth differ in length");
    }
    const std::size_t cut = n.value_or(truth.outlier_count());
    if (cut < 1 || cut > scores.size()) {
        throw std::out_of_range("P@n needs 1 <= n <= " + std::to_string(scores.size()) + ", got " +
                                std::to_string(cut));
    }

    std::vector<double> sorted(scores.begin(), scores.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cut - 1),
                     sorted.end(), std::greater<>());
    const double boundary = sorted[cut - 1];

    std::size_t above = 0;
    std::size_t hits_above = 0;
    std::size_t tied = 0;
    std::size_t hits_tied = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool outlier = truth.labels[i] == Label::outlier;
        if (scores[i] > boundary) {
            ++above;
            hits_above += outlier ? 1 : 0;
        } else if (scores[i] == boundary) {
            ++tied;
            hits_tied += outlier ? 1 : 0;
        }
    }
    const double slots = static_cast<double>(cut - above);
    const double credit = static_cast<double>(hits_tied) * slots / static_cast<double>(tied);
    return (static_cast<double>(hits_above) + credit) / static_cast<double>(cut);
}

MetricsReport threshold_metrics(std::span<const Label> predicted, const GroundTruth& truth) {
    if (predicted.size() != truth.size()) {
        throw std::invalid_argument("predicted labels (" + std::to_string(predicted.size()) +
                                    ") and ground truth (" + std::to_string(truth.size()) +
                                    ") differ in length");
    }
    MetricsReport r;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] == Label::outlier;
        const bool t = truth.labels[i] == Label::outlier;
        if (p && t) {
            ++r.confusion.tp;
        } else if (p) {
            ++r.confusion.fp;
        } else if (t) {
            ++r.confusion.fn;
        } else {
            ++r.confusion.tn;
        }
    }
    const auto& c = r.confusion;
    r.precision = ratio(c.tp, c.tp + c.fp);
    r.recall = ratio(c.tp, c.tp + c.fn);
    r.specificity = ratio(c.tn, c.tn + c.fp);
    const double pr = r.precision + r.recall;
    r.f_measure = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
    r.g_mean = std::sqrt(r.recall * r.specificity);
    return r;
}

} // namespace autoglosh
