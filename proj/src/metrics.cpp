#include "adlex/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace adlex {

ConfusionCounts confusion_counts(const std::vector<double>& scores, const std::vector<Label>& truth) {
    ConfusionCounts c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bool pred_pos = scores[i] > 0.0;  // ties go to editorial
        bool is_pos = truth[i] == Label::commercial;
        if (pred_pos && is_pos)
            ++c.tp;
        else if (pred_pos && !is_pos)
            ++c.fp;
        else if (!pred_pos && is_pos)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

Metrics compute_metrics(const std::vector<double>& scores, const std::vector<Label>& truth) {
    if (scores.size() != truth.size()) throw std::runtime_error("scores and truth size mismatch");
    if (scores.empty()) throw std::runtime_error("cannot compute metrics on empty input");

    Metrics m;
    ConfusionCounts c = confusion_counts(scores, truth);
    const double n = static_cast<double>(scores.size());
    m.accuracy = static_cast<double>(c.tp + c.tn) / n;

    if (c.tp == 0) {
        m.f1 = 0.0;
    } else {
        double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        m.f1 = 2.0 * precision * recall / (precision + recall);
    }

    long n_pos = c.tp + c.fn;
    long n_neg = c.fp + c.tn;
    if (n_pos == 0 || n_neg == 0) {
        m.auc = std::nullopt;  // undefined for single-class truth
        return m;
    }

    // Midranks doubled to stay in integers: rank2[i] = 2 * midrank.
    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    std::vector<long long> rank2(scores.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        // positions i..j (0-based) share midrank ((i+1) + (j+1)) / 2
        long long r2 = static_cast<long long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
        i = j + 1;
    }
    long long rank2_pos_sum = 0;
    for (std::size_t k = 0; k < scores.size(); ++k)
        if (truth[k] == Label::commercial) rank2_pos_sum += rank2[k];
    // AUC = (R+ - n_pos*(n_pos+1)/2) / (n_pos*n_neg), with R+ = rank2_pos_sum/2
    long long numerator2 = rank2_pos_sum - static_cast<long long>(n_pos) * (n_pos + 1);
    m.auc = static_cast<double>(numerator2) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
    return m;
}

}  // namespace adlex
