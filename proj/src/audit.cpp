#include "adlex/audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "adlex/io.hpp"

namespace adlex {

std::vector<LeakerCandidate> audit_leaker_candidates(const LinearModel& model, const Corpus& corpus,
                                                     const Vocabulary& vocab) {
    if (model.weights.size() != vocab.size())
        throw std::runtime_error("model was not trained against this vocabulary");

    std::vector<std::int64_t> df_total(vocab.size(), 0);
    std::vector<std::int64_t> df_commercial(vocab.size(), 0);
    std::map<std::string, std::vector<std::int64_t>> df_medium;
    for (const auto& medium : corpus.media) df_medium[medium].assign(vocab.size(), 0);

    for (const auto& doc : corpus.docs) {
        std::unordered_set<std::uint32_t> present;
        for (const auto& token : tokenize(doc.body, {})) {
            auto it = vocab.index.find(token);
            if (it != vocab.index.end()) present.insert(it->second);
        }
        for (std::uint32_t i : present) {
            ++df_total[i];
            if (doc.label == Label::commercial) ++df_commercial[i];
            ++df_medium[doc.medium][i];
        }
    }

    std::vector<LeakerCandidate> out;
    out.reserve(vocab.size());
    for (std::uint32_t i = 0; i < vocab.size(); ++i) {
        LeakerCandidate c;
        c.term = vocab.terms[i];
        c.weight = model.weights[i];
        if (df_total[i] > 0) {
            double frac_comm = static_cast<double>(df_commercial[i]) / static_cast<double>(df_total[i]);
            c.class_exclusivity = std::max(frac_comm, 1.0 - frac_comm);
            for (const auto& [medium, df] : df_medium)
                c.medium_exclusivity = std::max(
                    c.medium_exclusivity, static_cast<double>(df[i]) / static_cast<double>(df_total[i]));
        }
        c.rank_score = std::fabs(c.weight) * c.class_exclusivity * c.medium_exclusivity;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const LeakerCandidate& a, const LeakerCandidate& b) {
        if (a.rank_score != b.rank_score) return a.rank_score > b.rank_score;
        return a.term < b.term;
    });
    return out;
}

std::string candidates_to_csv(const std::vector<LeakerCandidate>& candidates) {
    std::string out = "term,weight,class_exclusivity,medium_exclusivity,rank_score\n";
    for (const auto& c : candidates) {
        out += c.term + "," + format_double_sig(c.weight, 12) + "," + format_double_sig(c.class_exclusivity, 12) +
               "," + format_double_sig(c.medium_exclusivity, 12) + "," + format_double_sig(c.rank_score, 12) + "\n";
    }
    return out;
}

}  // namespace adlex
