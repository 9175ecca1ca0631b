#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace adlex {

using StopwordSet = std::unordered_set<std::string>;

// Normalizes raw article text: HTML tags stripped (script/style/comment
// contents dropped, text nodes kept), ASCII lowercasing, commas removed,
// whitespace runs collapsed to single spaces, ends trimmed. Idempotent.
// Bytes >= 0x80 pass through untouched, so UTF-8 stays valid.
std::string clean_text(std::string_view raw);

// Splits cleaned text into feature tokens: maximal runs of [a-z0-9] or
// non-ASCII bytes, tokens shorter than 2 bytes dropped, stopwords dropped.
// Order and multiplicity preserved.
std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords);

// Raw token split with no length or stopword filter. Used where every token
// counts (lexicon scoring, sentence co-occurrence).
std::vector<std::string> split_tokens(std::string_view text);

// Stop-word file: one token per line, '#' starts a comment, UTF-8.
StopwordSet load_stopwords(const std::string& path);
StopwordSet parse_stopwords(std::string_view content);

}  // namespace adlex
