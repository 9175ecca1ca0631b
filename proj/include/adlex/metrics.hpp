#pragma once

#include <optional>
#include <vector>

#include "adlex/corpus.hpp"

namespace adlex {

struct Metrics {
    double accuracy = 0.0;
    double f1 = 0.0;  // positive class = commercial
    std::optional<double> auc;  // undefined when truth is single-class
};

// Accuracy thresholds scores at 0 (> 0 -> commercial). F1 on the commercial
// class, 0 when there are no true positives but errors exist. AUC is the
// Mann-Whitney rank statistic with midranks for tied scores.
Metrics compute_metrics(const std::vector<double>& scores, const std::vector<Label>& truth);

struct ConfusionCounts {
    long tp = 0, fp = 0, tn = 0, fn = 0;
};
ConfusionCounts confusion_counts(const std::vector<double>& scores, const std::vector<Label>& truth);

}  // namespace adlex
