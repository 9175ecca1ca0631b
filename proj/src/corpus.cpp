#include "adlex/corpus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "adlex/io.hpp"
#include "adlex/rng.hpp"

namespace adlex {

using nlohmann::json;

const char* label_name(Label l) { return l == Label::commercial ? "commercial" : "editorial"; }

Label parse_label(std::string_view s) {
    if (s == "editorial") return Label::editorial;
    if (s == "commercial") return Label::commercial;
    throw std::runtime_error("unknown label \"" + std::string(s) + "\"");
}

void Corpus::rebuild_media() {
    media.clear();
    for (const auto& d : docs) media.insert(d.medium);
}

Corpus parse_corpus_jsonl(std::string_view content) {
    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::size_t pos = 0;
    long line_no = 0;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(pos, end - pos);
        ++line_no;
        bool at_end = end == content.size();
        pos = end + 1;
        // skip blank lines (trailing newline produces one)
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        if (blank) {
            if (at_end) break;
            continue;
        }

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("malformed JSON at line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!obj.is_object())
            throw std::runtime_error("malformed record at line " + std::to_string(line_no) + ": not an object");

        Document d;
        try {
            d.id = obj.at("id").get<std::string>();
            d.medium = obj.at("medium").get<std::string>();
            std::string label = obj.at("label").get<std::string>();
            if (label != "editorial" && label != "commercial")
                throw std::runtime_error("unknown label at line " + std::to_string(line_no) + ": \"" + label + "\"");
            d.label = parse_label(label);
            d.title = obj.value("title", std::string());
            d.body = obj.at("body").get<std::string>();
            if (obj.contains("date") && !obj.at("date").is_null()) d.date = obj.at("date").get<std::string>();
        } catch (const json::exception& e) {
            throw std::runtime_error("malformed record at line " + std::to_string(line_no) + ": " + e.what());
        }
        if (d.medium.empty())
            throw std::runtime_error("empty medium at line " + std::to_string(line_no));
        if (!seen_ids.insert(d.id).second)
            throw std::runtime_error("duplicate id \"" + d.id + "\" at line " + std::to_string(line_no));
        corpus.docs.push_back(std::move(d));
        if (at_end) break;
    }
    corpus.rebuild_media();
    return corpus;
}

Corpus load_corpus(const std::string& path) { return parse_corpus_jsonl(read_file(path)); }

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& d : corpus.docs) {
        json obj;
        obj["id"] = d.id;
        obj["medium"] = d.medium;
        obj["label"] = label_name(d.label);
        obj["title"] = d.title;
        obj["body"] = d.body;
        if (d.date.empty())
            obj["date"] = nullptr;
        else
            obj["date"] = d.date;
        out += obj.dump();
        out += '\n';
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    atomic_write_file(path, corpus_to_jsonl(corpus));
}

std::string remove_leaker_tokens(std::string_view body, const StopwordSet& leakers) {
    std::string kept;
    kept.reserve(body.size());
    std::size_t i = 0;
    auto is_tok = [](unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
    };
    while (i < body.size()) {
        if (!is_tok(static_cast<unsigned char>(body[i]))) {
            kept.push_back(body[i]);
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < body.size() && is_tok(static_cast<unsigned char>(body[i]))) ++i;
        std::string token(body.substr(start, i - start));
        if (!leakers.count(token)) kept += token;
        // dropped tokens leave their surrounding separators; collapsed below
    }
    // collapse whitespace runs and trim, mirroring clean_text
    std::string out;
    out.reserve(kept.size());
    bool pending = false;
    for (char c : kept) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending = true;
            continue;
        }
        if (pending && !out.empty()) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

Corpus filter_leakers(const Corpus& corpus, const StopwordSet& leakers) {
    if (leakers.empty()) return corpus;
    Corpus out = corpus;
    for (auto& d : out.docs) d.body = remove_leaker_tokens(d.body, leakers);
    return out;
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
split_stratified_kfold(const Corpus& corpus, int k, std::uint64_t seed) {
    if (k < 2) throw std::runtime_error("k-fold requires k >= 2");
    std::map<Label, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) by_class[corpus.docs[i].label].push_back(i);
    for (const auto& [label, idx] : by_class) {
        if (idx.size() < static_cast<std::size_t>(k))
            throw std::runtime_error(std::string("class \"") + label_name(label) + "\" has fewer than k=" +
                                     std::to_string(k) + " documents");
    }

    std::vector<int> fold_of(corpus.docs.size(), -1);
    for (auto& [label, idx] : by_class) {
        Rng rng(derive_seed(seed, "kfold", static_cast<std::uint64_t>(label)));
        rng.shuffle(idx);
        for (std::size_t j = 0; j < idx.size(); ++j) fold_of[idx[j]] = static_cast<int>(j % k);
    }

    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> folds(k);
    for (int f = 0; f < k; ++f) {
        for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
            if (fold_of[i] == f)
                folds[f].second.push_back(corpus.docs[i].id);
            else
                folds[f].first.push_back(corpus.docs[i].id);
        }
    }
    return folds;
}

std::pair<Corpus, Corpus> split_leave_one_medium_out(const Corpus& corpus, const std::string& medium) {
    if (!corpus.media.count(medium)) throw std::runtime_error("unknown medium \"" + medium + "\"");
    if (corpus.media.size() < 2)
        throw std::runtime_error("leave-one-medium-out needs at least two media (train split would be empty)");
    Corpus train, test;
    for (const auto& d : corpus.docs) {
        if (d.medium == medium)
            test.docs.push_back(d);
        else
            train.docs.push_back(d);
    }
    train.rebuild_media();
    test.rebuild_media();
    return {std::move(train), std::move(test)};
}

Corpus subset_by_ids(const Corpus& corpus, const std::vector<std::string>& ids) {
    std::unordered_set<std::string> want(ids.begin(), ids.end());
    Corpus out;
    for (const auto& d : corpus.docs)
        if (want.count(d.id)) out.docs.push_back(d);
    out.rebuild_media();
    return out;
}

}  // namespace adlex
