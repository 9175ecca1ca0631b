#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adlex/text.hpp"

namespace adlex {

enum class Label { editorial, commercial };

const char* label_name(Label l);
Label parse_label(std::string_view s);  // throws on unknown label

struct Document {
    std::string id;
    std::string medium;
    Label label = Label::editorial;
    std::string title;  // retained but never used as a feature
    std::string body;
    std::string date;  // ISO-8601 or empty
};

struct Corpus {
    std::vector<Document> docs;
    std::set<std::string> media;

    void rebuild_media();
};

// Parses one JSON object per line. Errors name the 1-based line number.
Corpus load_corpus(const std::string& path);
Corpus parse_corpus_jsonl(std::string_view content);
std::string corpus_to_jsonl(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::string& path);

// Deletes every token-boundary occurrence of each leaker from every body,
// then collapses the whitespace left behind. Ids, labels and media are
// untouched; an empty leaker set returns the corpus byte-identical.
Corpus filter_leakers(const Corpus& corpus, const StopwordSet& leakers);
std::string remove_leaker_tokens(std::string_view body, const StopwordSet& leakers);

// Stratified k-fold assignment: per-class shuffle (seeded) dealt round-robin,
// so per-fold class counts stay within 1 of the exact proportion.
// Returns k (train_ids, test_ids) pairs; ids keep corpus order inside folds.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
split_stratified_kfold(const Corpus& corpus, int k, std::uint64_t seed);

// Leave-one-medium-out: test = all docs of `medium`, train = the rest.
std::pair<Corpus, Corpus> split_leave_one_medium_out(const Corpus& corpus, const std::string& medium);

// Materializes a sub-corpus from an id list (corpus order preserved).
Corpus subset_by_ids(const Corpus& corpus, const std::vector<std::string>& ids);

}  // namespace adlex
