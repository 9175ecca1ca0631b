#include "adlex/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "adlex/io.hpp"

namespace adlex {

double DocVector::l2_norm() const {
    double s = 0.0;
    for (const auto& [i, v] : entries) s += v * v;
    return std::sqrt(s);
}

double DocVector::get(std::uint32_t index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const auto& e, std::uint32_t i) { return e.first < i; });
    if (it != entries.end() && it->first == index) return it->second;
    return 0.0;
}

std::uint64_t Vocabulary::hash() const { return fnv1a_hash(terms); }

std::string Vocabulary::to_csv() const {
    std::string out = "term,index,df,idf\n";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out += terms[i];
        out += ',';
        out += std::to_string(i);
        out += ',';
        out += std::to_string(df[i]);
        out += ',';
        out += format_double_sig(idf[i], 12);
        out += '\n';
    }
    return out;
}

Vocabulary build_vocabulary(const Corpus& corpus, std::size_t max_features, const StopwordSet& stopwords) {
    if (corpus.docs.empty()) throw std::runtime_error("cannot build vocabulary from an empty corpus");
    if (max_features < 1) throw std::runtime_error("max_features must be >= 1");

    // std::map keeps terms ordered, which makes the count tie-break trivial
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> stats;  // term -> (total count, df)
    for (const auto& doc : corpus.docs) {
        auto tokens = tokenize(doc.body, stopwords);
        std::map<std::string, std::int64_t> local;
        for (auto& t : tokens) ++local[t];
        for (auto& [term, count] : local) {
            auto& [total, df] = stats[term];
            total += count;
            df += 1;
        }
    }

    std::vector<const std::string*> ranked;
    ranked.reserve(stats.size());
    for (const auto& [term, st] : stats) ranked.push_back(&term);
    std::stable_sort(ranked.begin(), ranked.end(), [&](const std::string* a, const std::string* b) {
        return stats.at(*a).first > stats.at(*b).first;  // stable keeps lexicographic order among ties
    });
    if (ranked.size() > max_features) ranked.resize(max_features);

    std::vector<std::string> selected;
    selected.reserve(ranked.size());
    for (const auto* t : ranked) selected.push_back(*t);
    std::sort(selected.begin(), selected.end());

    Vocabulary vocab;
    vocab.max_features = max_features;
    vocab.n_docs = static_cast<std::int64_t>(corpus.docs.size());
    vocab.terms = std::move(selected);
    vocab.df.resize(vocab.terms.size());
    vocab.idf.resize(vocab.terms.size());
    for (std::uint32_t i = 0; i < vocab.terms.size(); ++i) {
        vocab.index.emplace(vocab.terms[i], i);
        std::int64_t df = stats.at(vocab.terms[i]).second;
        vocab.df[i] = df;
        vocab.idf[i] = std::log((1.0 + static_cast<double>(vocab.n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
    }
    return vocab;
}

DocVector vectorize_counts(const Document& doc, const Vocabulary& vocab) {
    std::map<std::uint32_t, double> counts;
    for (const auto& token : tokenize(doc.body, {})) {
        auto it = vocab.index.find(token);
        if (it != vocab.index.end()) counts[it->second] += 1.0;
    }
    DocVector v;
    v.mode = NormMode::raw_counts;
    v.entries.assign(counts.begin(), counts.end());
    return v;
}

std::vector<DocVector> vectorize_corpus(const Corpus& corpus, const Vocabulary& vocab) {
    std::vector<DocVector> out;
    out.reserve(corpus.docs.size());
    for (const auto& d : corpus.docs) out.push_back(vectorize_counts(d, vocab));
    return out;
}

DocVector apply_tfidf_one(const DocVector& counts, const Vocabulary& vocab) {
    DocVector v;
    v.mode = NormMode::tfidf_l2;
    v.entries.reserve(counts.entries.size());
    for (const auto& [i, c] : counts.entries) {
        if (i >= vocab.size()) throw std::runtime_error("doc vector index exceeds vocabulary size");
        v.entries.emplace_back(i, c * vocab.idf[i]);
    }
    double norm = v.l2_norm();
    if (norm > 0.0)
        for (auto& [i, w] : v.entries) w /= norm;
    return v;
}

std::vector<DocVector> apply_tfidf(const std::vector<DocVector>& counts, const Vocabulary& vocab) {
    std::vector<DocVector> out;
    out.reserve(counts.size());
    for (const auto& c : counts) out.push_back(apply_tfidf_one(c, vocab));
    return out;
}

}  // namespace adlex
