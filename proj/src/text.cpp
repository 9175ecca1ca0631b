#include "adlex/text.hpp"

#include <algorithm>
#include <cctype>

#include "adlex/io.hpp"

namespace adlex {

namespace {

bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool iequal_at(std::string_view s, std::size_t pos, std::string_view word) {
    if (pos + word.size() > s.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[pos + i])) != word[i]) return false;
    }
    return true;
}

// Finds the end of "</name ...>" starting the search at `from`; returns the
// index one past the closing '>', or npos.
std::size_t find_closing_tag(std::string_view s, std::size_t from, std::string_view name) {
    for (std::size_t i = from; i + 1 < s.size(); ++i) {
        if (s[i] == '<' && s[i + 1] == '/' && iequal_at(s, i + 2, name)) {
            std::size_t j = s.find('>', i);
            return j == std::string_view::npos ? s.size() : j + 1;
        }
    }
    return s.size();
}

// Removes markup, replacing each tag with a space. Contents of script, style
// and comments are dropped entirely. A '<' not followed by a letter, '/' or
// '!' is literal text.
std::string strip_html(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c != '<') {
            out.push_back(c);
            ++i;
            continue;
        }
        if (i + 1 >= s.size()) {
            out.push_back(c);
            break;
        }
        char n = s[i + 1];
        bool tag = std::isalpha(static_cast<unsigned char>(n)) || n == '/' || n == '!';
        if (!tag) {
            out.push_back(c);
            ++i;
            continue;
        }
        if (n == '!' && i + 3 < s.size() && s[i + 2] == '-' && s[i + 3] == '-') {
            std::size_t end = s.find("-->", i + 4);
            i = end == std::string_view::npos ? s.size() : end + 3;
            out.push_back(' ');
            continue;
        }
        if (iequal_at(s, i + 1, "script")) {
            std::size_t open_end = s.find('>', i);
            if (open_end == std::string_view::npos) break;
            i = find_closing_tag(s, open_end + 1, "script");
            out.push_back(' ');
            continue;
        }
        if (iequal_at(s, i + 1, "style")) {
            std::size_t open_end = s.find('>', i);
            if (open_end == std::string_view::npos) break;
            i = find_closing_tag(s, open_end + 1, "style");
            out.push_back(' ');
            continue;
        }
        std::size_t end = s.find('>', i);
        i = end == std::string_view::npos ? s.size() : end + 1;
        out.push_back(' ');
    }
    return out;
}

}  // namespace

std::string clean_text(std::string_view raw) {
    // commas go first; removing them later could splice text into something
    // that parses as a tag on a second pass, breaking idempotence
    std::string no_commas;
    no_commas.reserve(raw.size());
    for (char c : raw)
        if (c != ',') no_commas.push_back(c);
    std::string text = strip_html(no_commas);
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_token_char(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && is_token_char(static_cast<unsigned char>(text[i]))) ++i;
        tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords) {
    std::vector<std::string> tokens = split_tokens(text);
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (auto& t : tokens) {
        if (t.size() < 2) continue;
        if (stopwords.count(t)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

StopwordSet parse_stopwords(std::string_view content) {
    StopwordSet set;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(pos, end - pos);
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t b = 0, e = line.size();
        while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
        if (e > b) set.emplace(line.substr(b, e - b));
        if (end == content.size()) break;
        pos = end + 1;
    }
    return set;
}

StopwordSet load_stopwords(const std::string& path) { return parse_stopwords(read_file(path)); }

}  // namespace adlex
