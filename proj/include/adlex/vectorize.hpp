#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/text.hpp"

namespace adlex {

enum class NormMode { raw_counts, tfidf_l2 };

// Sparse feature vector; entries sorted by index, values of stored entries > 0.
struct DocVector {
    std::vector<std::pair<std::uint32_t, double>> entries;
    NormMode mode = NormMode::raw_counts;

    double l2_norm() const;
    double get(std::uint32_t index) const;  // 0.0 when absent
};

struct Vocabulary {
    std::vector<std::string> terms;  // index order: lexicographic over the selected terms
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::int64_t> df;
    std::vector<double> idf;  // ln((1 + n_docs) / (1 + df)) + 1
    std::int64_t n_docs = 0;
    std::size_t max_features = 0;

    std::size_t size() const { return terms.size(); }
    std::uint64_t hash() const;
    std::string to_csv() const;  // term,index,df,idf
};

// Candidate terms ranked by total corpus term count (ties lexicographically
// ascending), top max_features kept. df/idf computed over bodies only.
Vocabulary build_vocabulary(const Corpus& corpus, std::size_t max_features, const StopwordSet& stopwords);

// Raw occurrence counts of vocabulary terms in the document body.
DocVector vectorize_counts(const Document& doc, const Vocabulary& vocab);
std::vector<DocVector> vectorize_corpus(const Corpus& corpus, const Vocabulary& vocab);

// count * idf then L2 normalization; empty vectors stay empty.
std::vector<DocVector> apply_tfidf(const std::vector<DocVector>& counts, const Vocabulary& vocab);
DocVector apply_tfidf_one(const DocVector& counts, const Vocabulary& vocab);

}  // namespace adlex
