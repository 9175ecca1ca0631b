#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/model.hpp"
#include "adlex/svm.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

struct LexiconEntry {
    std::string term;
    double weight = 0.0;  // > 0 commercial indicator, < 0 editorial
};

struct LexiconMeta {
    std::string model_kind;
    std::string params;
    std::string vocab_hash;
    std::string created;  // ISO date
    bool all_zero = false;
};

struct Lexicon {
    std::vector<LexiconEntry> entries;  // sorted by weight descending, term ascending on ties
    LexiconMeta meta;

    double weight_of(const std::string& term) const;  // 0.0 when absent
    bool contains(const std::string& term) const;
    void rebuild_index();

    std::string to_csv() const;  // header term,weight; >= 10 significant digits
    std::string meta_to_json() const;

private:
    std::unordered_map<std::string, double> index_;
};

// One entry per vocabulary term with the linear model's weight for it.
Lexicon derive_lexicon(const LinearModel& model, const Vocabulary& vocab);

// Same, but rejects non-linear model kinds at runtime.
Lexicon derive_lexicon_any(const AnyModel& model, const Vocabulary& vocab);

Lexicon parse_lexicon_csv(std::string_view content);
Lexicon load_lexicon(const std::string& path);

// Sum over body tokens of count(term) * weight(term); unknown tokens add 0.
double score_weighted(const Document& doc, const Lexicon& lexicon);

struct CountScore {
    long pos_tokens = 0;
    long neg_tokens = 0;
    Label verdict = Label::editorial;  // commercial iff pos > neg
};
CountScore score_count(const Document& doc, const Lexicon& lexicon);

// Identical weighted sum taken over an indexed feature vector instead of raw
// tokens; with a TF-IDF vector this reproduces the linear model's decision
// score minus its bias.
double score_weighted_vector(const DocVector& x, const Lexicon& lexicon, const Vocabulary& vocab);

struct Histogram {
    std::vector<double> edges;  // bins+1 ascending
    std::vector<long> count_editorial;
    std::vector<long> count_commercial;

    std::string to_csv() const;  // bin_low,bin_high,count_editorial,count_commercial
};

// Equal-width bins over [min score, max score] of the weighted scores; a
// constant score range is widened by +/-0.5.
Histogram score_distribution(const Corpus& corpus, const Lexicon& lexicon, int bins);

// n largest-|weight| entries of the requested sign; fewer than n -> all.
std::vector<LexiconEntry> top_features(const Lexicon& lexicon, std::size_t n, Label side);

}  // namespace adlex
