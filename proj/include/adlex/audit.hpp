#pragma once

#include <string>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/svm.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

struct LeakerCandidate {
    std::string term;
    double weight = 0.0;
    double class_exclusivity = 0.0;   // max over classes of df-in-class / df
    double medium_exclusivity = 0.0;  // max over media of df-in-medium / df
    double rank_score = 0.0;          // |weight| * class_excl * medium_excl
};

// Advisory ranking of terms that look dataset-specific: heavily weighted AND
// concentrated in one class or medium. Feeds the iterative leaker-removal
// loop; never applied automatically.
std::vector<LeakerCandidate> audit_leaker_candidates(const LinearModel& model, const Corpus& corpus,
                                                     const Vocabulary& vocab);

std::string candidates_to_csv(const std::vector<LeakerCandidate>& candidates);

}  // namespace adlex
