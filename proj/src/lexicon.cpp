#include "adlex/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

#include "adlex/io.hpp"

namespace adlex {

using nlohmann::json;

namespace {

std::string today_iso() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[16];
    std::strftime(buf, sizeof(buf), "%Y-%m-%d", &tm);
    return buf;
}

void sort_entries(std::vector<LexiconEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.term < b.term;
    });
}

std::unordered_map<std::string, long> token_counts(const Document& doc) {
    std::unordered_map<std::string, long> counts;
    for (const auto& t : split_tokens(doc.body)) ++counts[t];
    return counts;
}

}  // namespace

double Lexicon::weight_of(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? 0.0 : it->second;
}

bool Lexicon::contains(const std::string& term) const { return index_.count(term) > 0; }

void Lexicon::rebuild_index() {
    index_.clear();
    index_.reserve(entries.size());
    for (const auto& e : entries) {
        if (!index_.emplace(e.term, e.weight).second)
            throw std::runtime_error("duplicate lexicon term \"" + e.term + "\"");
    }
}

std::string Lexicon::to_csv() const {
    std::string out = "term,weight\n";
    for (const auto& e : entries) {
        out += e.term;
        out += ',';
        out += format_double_sig(e.weight, 12);
        out += '\n';
    }
    return out;
}

std::string Lexicon::meta_to_json() const {
    json obj;
    obj["model_kind"] = meta.model_kind;
    obj["params"] = meta.params;
    obj["vocab_hash"] = meta.vocab_hash;
    obj["created"] = meta.created;
    obj["all_zero"] = meta.all_zero;
    obj["entries"] = entries.size();
    obj["sign_convention"] = "positive weight indicates commercial language";
    return obj.dump(2) + "\n";
}

Lexicon derive_lexicon(const LinearModel& model, const Vocabulary& vocab) {
    if (model.weights.size() != vocab.size())
        throw std::runtime_error("lexicon requires a linear model fitted against this vocabulary");
    Lexicon lex;
    lex.entries.reserve(vocab.size());
    bool any_nonzero = false;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        lex.entries.push_back({vocab.terms[i], model.weights[i]});
        any_nonzero |= model.weights[i] != 0.0;
    }
    sort_entries(lex.entries);
    lex.meta.model_kind = model.solver == LinearSolver::dcd ? "linear_svm" : "sgd";
    lex.meta.params = (model.solver == LinearSolver::dcd ? std::string("C=") : std::string("lambda=")) +
                      format_double(model.c_or_lambda) + ",epochs_run=" + std::to_string(model.epochs_run);
    lex.meta.vocab_hash = to_hex(vocab.hash());
    lex.meta.created = today_iso();
    lex.meta.all_zero = !any_nonzero;
    lex.rebuild_index();
    return lex;
}

Lexicon derive_lexicon_any(const AnyModel& model, const Vocabulary& vocab) {
    const LinearModel* linear = std::get_if<LinearModel>(&model);
    if (!linear) throw std::runtime_error("lexicon requires linear model");
    return derive_lexicon(*linear, vocab);
}

Lexicon parse_lexicon_csv(std::string_view content) {
    Lexicon lex;
    std::size_t pos = 0;
    long line_no = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line == "term,weight") continue;
        std::size_t comma = line.rfind(',');
        if (comma == std::string_view::npos)
            throw std::runtime_error("malformed lexicon line " + std::to_string(line_no));
        std::string term(line.substr(0, comma));
        std::string weight_text(line.substr(comma + 1));
        std::size_t used = 0;
        double weight = std::stod(weight_text, &used);
        if (used != weight_text.size())
            throw std::runtime_error("bad weight on lexicon line " + std::to_string(line_no));
        lex.entries.push_back({std::move(term), weight});
    }
    sort_entries(lex.entries);
    lex.rebuild_index();
    return lex;
}

Lexicon load_lexicon(const std::string& path) { return parse_lexicon_csv(read_file(path)); }

double score_weighted(const Document& doc, const Lexicon& lexicon) {
    auto counts = token_counts(doc);
    // iterate entries in lexicon order so the sum is reproducible term by term
    double score = 0.0;
    for (const auto& e : lexicon.entries) {
        auto it = counts.find(e.term);
        if (it != counts.end()) score += static_cast<double>(it->second) * e.weight;
    }
    return score;
}

CountScore score_count(const Document& doc, const Lexicon& lexicon) {
    auto counts = token_counts(doc);
    CountScore out;
    for (const auto& e : lexicon.entries) {
        if (e.weight == 0.0) continue;
        auto it = counts.find(e.term);
        if (it == counts.end()) continue;
        if (e.weight > 0.0)
            out.pos_tokens += it->second;
        else
            out.neg_tokens += it->second;
    }
    out.verdict = out.pos_tokens > out.neg_tokens ? Label::commercial : Label::editorial;
    return out;
}

double score_weighted_vector(const DocVector& x, const Lexicon& lexicon, const Vocabulary& vocab) {
    double score = 0.0;
    for (const auto& [i, v] : x.entries) {
        if (i >= vocab.size()) throw std::runtime_error("vector index exceeds vocabulary");
        score += v * lexicon.weight_of(vocab.terms[i]);
    }
    return score;
}

std::string Histogram::to_csv() const {
    std::string out = "bin_low,bin_high,count_editorial,count_commercial\n";
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        out += format_double_sig(edges[b], 12) + "," + format_double_sig(edges[b + 1], 12) + "," +
               std::to_string(count_editorial[b]) + "," + std::to_string(count_commercial[b]) + "\n";
    }
    return out;
}

Histogram score_distribution(const Corpus& corpus, const Lexicon& lexicon, int bins) {
    if (corpus.docs.empty()) throw std::runtime_error("cannot build a score distribution from an empty corpus");
    if (bins < 1) throw std::runtime_error("bins must be >= 1");

    std::vector<double> scores;
    scores.reserve(corpus.docs.size());
    for (const auto& d : corpus.docs) scores.push_back(score_weighted(d, lexicon));
    double lo = *std::min_element(scores.begin(), scores.end());
    double hi = *std::max_element(scores.begin(), scores.end());
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }

    Histogram h;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    h.count_editorial.assign(static_cast<std::size_t>(bins), 0);
    h.count_commercial.assign(static_cast<std::size_t>(bins), 0);

    for (std::size_t i = 0; i < scores.size(); ++i) {
        double frac = (scores[i] - lo) / (hi - lo);
        long b = static_cast<long>(frac * bins);
        if (b >= bins) b = bins - 1;  // top edge closes the last bin
        if (b < 0) b = 0;
        auto& counts = corpus.docs[i].label == Label::commercial ? h.count_commercial : h.count_editorial;
        ++counts[static_cast<std::size_t>(b)];
    }
    return h;
}

std::vector<LexiconEntry> top_features(const Lexicon& lexicon, std::size_t n, Label side) {
    if (n < 1) throw std::runtime_error("n must be >= 1");
    std::vector<LexiconEntry> matching;
    for (const auto& e : lexicon.entries) {
        if (side == Label::commercial && e.weight > 0.0) matching.push_back(e);
        if (side == Label::editorial && e.weight < 0.0) matching.push_back(e);
    }
    std::sort(matching.begin(), matching.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        double aa = std::fabs(a.weight), ab = std::fabs(b.weight);
        if (aa != ab) return aa > ab;
        return a.term < b.term;
    });
    if (matching.size() > n) matching.resize(n);
    return matching;
}

}  // namespace adlex
