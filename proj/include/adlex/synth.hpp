#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adlex/corpus.hpp"

namespace adlex {

struct SynthMedium {
    std::string name;
    double share = 0.25;
    // negative values inherit the corpus-wide setting
    double s = -1.0;            // P(token carries class signal)
    double jargon_frac = 0.0;   // share of signal tokens drawn from this medium's own class pools
    double confusion = -1.0;    // P(a global signal token comes from the opposite class pool)
    double nuisance = -1.0;     // P(a non-signal token comes from this medium's nuisance pool)
};

struct LeakerSpec {
    std::string token;
    Label label = Label::commercial;
    std::string medium;
};

// Unigram mixture over disjoint token pools: global class pools, a shared
// background pool, per-medium nuisance pools, and optional per-medium class
// jargon pools. Simple enough for a closed-form likelihood-ratio oracle,
// rich enough to reproduce the cross-domain effects.
struct SynthSpec {
    int n_docs = 2000;
    std::vector<SynthMedium> media;  // empty -> four equal media m0..m3
    double class_balance = 0.5;      // commercial fraction
    int commercial_terms = 50;
    int editorial_terms = 50;
    int background_terms = 400;
    int medium_nuisance_terms = 20;  // per medium
    int medium_class_terms = 30;     // per medium, per class
    int len_min = 100;
    int len_max = 300;
    double s = 0.5;
    double nuisance = 0.1;
    double confusion = 0.0;
    std::optional<LeakerSpec> leaker;
    std::uint64_t seed = 0;

    std::vector<SynthMedium> resolved_media() const;  // defaults filled in
    void validate() const;
};

// Deterministic for a fixed seed; per-document seeds are derived, so the
// sampler is order-independent.
Corpus generate(const SynthSpec& spec);

// Token pools and parameters as JSON, written next to generated corpora.
std::string ground_truth_json(const SynthSpec& spec);

struct BayesEstimate {
    double accuracy = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

// Monte-Carlo accuracy of the exact likelihood-ratio classifier on fresh
// samples from the generative model (leaker injection excluded).
BayesEstimate bayes_accuracy(const SynthSpec& spec, long n_mc, std::uint64_t seed);

}  // namespace adlex
