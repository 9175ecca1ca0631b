#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/lexicon.hpp"

namespace adlex {

// Splits a body on '.', '!', '?' or newline and reduces each sentence to the
// SET of its tokens (no length or stopword filter; multiplicity ignored).
std::vector<std::vector<std::string>> segment_sentences(const std::string& body);

struct CoocEdge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::int64_t pair_count = 0;  // 0 for projected (undirected) edges
    double weight = 0.0;          // sentences(from AND to) / sentences(from), in (0, 1]
};

// Directed sentence co-occurrence network over a lexicon term subset.
// Retained edges all satisfy weight >= threshold; isolated nodes stay in the
// counts but are dropped from exports.
struct CoocGraph {
    std::vector<std::string> terms;
    std::vector<Label> term_class;               // sign of the lexicon weight; ties to editorial
    std::vector<std::int64_t> sentence_counts;   // sentences containing the term
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> pair_counts;  // all nonzero ordered pairs
    std::vector<CoocEdge> edges;                 // retained, ordered by (from, to)
    double threshold = 0.5;
    bool directed = true;

    std::vector<std::size_t> degrees() const;  // incident retained edges per node
};

// Term selection for the default graph: top n lexicon entries by |weight|.
std::vector<LexiconEntry> select_graph_terms(const Lexicon& lexicon, std::size_t n);

CoocGraph build_cooc(const Corpus& corpus, const std::vector<LexiconEntry>& terms, double threshold);

// Undirected view: weight{a,b} = min(w(a->b), w(b->a)) computed from the full
// counts; a pair missing either direction is dropped; threshold re-applied to
// the min. Projecting an already-undirected graph returns it unchanged.
CoocGraph project_undirected(const CoocGraph& graph);

std::string graph_to_json(const CoocGraph& graph);
// editorial nodes blue, commercial red; node width grows with degree;
// edge label = weight to 2 decimals.
std::string graph_to_dot(const CoocGraph& graph);

void export_graph(const CoocGraph& graph, const std::string& path, const std::string& format);

}  // namespace adlex
