#include "adlex/cooc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "adlex/io.hpp"

namespace adlex {

using nlohmann::json;

std::vector<std::vector<std::string>> segment_sentences(const std::string& body) {
    std::vector<std::vector<std::string>> sentences;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        std::string_view piece(body.data() + start, end - start);
        std::set<std::string> seen;
        for (auto& t : split_tokens(piece)) seen.insert(std::move(t));
        if (!seen.empty()) sentences.emplace_back(seen.begin(), seen.end());
    };
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '.' || c == '!' || c == '?' || c == '\n') {
            flush(i);
            start = i + 1;
        }
    }
    flush(body.size());
    return sentences;
}

std::vector<LexiconEntry> select_graph_terms(const Lexicon& lexicon, std::size_t n) {
    std::vector<LexiconEntry> ranked = lexicon.entries;
    std::sort(ranked.begin(), ranked.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        double aa = std::abs(a.weight), ab = std::abs(b.weight);
        if (aa != ab) return aa > ab;
        return a.term < b.term;
    });
    if (ranked.size() > n) ranked.resize(n);
    return ranked;
}

std::vector<std::size_t> CoocGraph::degrees() const {
    std::vector<std::size_t> deg(terms.size(), 0);
    for (const auto& e : edges) {
        ++deg[e.from];
        ++deg[e.to];
    }
    return deg;
}

CoocGraph build_cooc(const Corpus& corpus, const std::vector<LexiconEntry>& terms, double threshold) {
    if (terms.empty()) throw std::runtime_error("co-occurrence graph needs a non-empty term set");
    if (!(threshold > 0.0 && threshold <= 1.0)) throw std::runtime_error("threshold must be in (0, 1]");

    CoocGraph g;
    g.threshold = threshold;
    g.directed = true;
    std::unordered_map<std::string, std::uint32_t> id_of;
    for (const auto& e : terms) {
        if (id_of.count(e.term)) continue;
        id_of.emplace(e.term, static_cast<std::uint32_t>(g.terms.size()));
        g.terms.push_back(e.term);
        g.term_class.push_back(e.weight > 0.0 ? Label::commercial : Label::editorial);
    }
    g.sentence_counts.assign(g.terms.size(), 0);

    for (const auto& doc : corpus.docs) {
        for (const auto& sentence : segment_sentences(doc.body)) {
            std::vector<std::uint32_t> present;
            for (const auto& token : sentence) {
                auto it = id_of.find(token);
                if (it != id_of.end()) present.push_back(it->second);
            }
            std::sort(present.begin(), present.end());
            for (std::uint32_t a : present) {
                ++g.sentence_counts[a];
                for (std::uint32_t b : present)
                    if (a != b) ++g.pair_counts[{a, b}];
            }
        }
    }

    for (const auto& [pair, count] : g.pair_counts) {
        double weight = static_cast<double>(count) / static_cast<double>(g.sentence_counts[pair.first]);
        if (weight >= threshold) g.edges.push_back({pair.first, pair.second, count, weight});
    }
    return g;
}

CoocGraph project_undirected(const CoocGraph& graph) {
    if (!graph.directed) return graph;
    CoocGraph g;
    g.terms = graph.terms;
    g.term_class = graph.term_class;
    g.sentence_counts = graph.sentence_counts;
    g.pair_counts = graph.pair_counts;
    g.threshold = graph.threshold;
    g.directed = false;
    for (const auto& [pair, count] : graph.pair_counts) {
        auto [a, b] = pair;
        if (a >= b) continue;  // visit each unordered pair once
        auto back = graph.pair_counts.find({b, a});
        if (back == graph.pair_counts.end()) continue;  // one direction absent -> dropped
        double w_ab = static_cast<double>(count) / static_cast<double>(graph.sentence_counts[a]);
        double w_ba = static_cast<double>(back->second) / static_cast<double>(graph.sentence_counts[b]);
        double w = std::min(w_ab, w_ba);
        if (w >= graph.threshold) g.edges.push_back({a, b, 0, w});
    }
    return g;
}

namespace {

// nodes participating in at least one retained edge, in index order
std::vector<std::uint32_t> visible_nodes(const CoocGraph& g, const std::vector<std::size_t>& deg) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < g.terms.size(); ++i)
        if (deg[i] > 0) out.push_back(i);
    return out;
}

}  // namespace

std::string graph_to_json(const CoocGraph& graph) {
    auto deg = graph.degrees();
    json out;
    out["directed"] = graph.directed;
    out["threshold"] = graph.threshold;
    json nodes = json::array();
    for (std::uint32_t i : visible_nodes(graph, deg)) {
        nodes.push_back({{"id", graph.terms[i]},
                         {"class", label_name(graph.term_class[i])},
                         {"degree", deg[i]}});
    }
    out["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& e : graph.edges)
        edges.push_back({{"from", graph.terms[e.from]}, {"to", graph.terms[e.to]}, {"weight", e.weight}});
    out["edges"] = std::move(edges);
    return out.dump(2) + "\n";
}

std::string graph_to_dot(const CoocGraph& graph) {
    auto deg = graph.degrees();
    std::string out = graph.directed ? "digraph cooc {\n" : "graph cooc {\n";
    out += "  node [style=filled];\n";
    for (std::uint32_t i : visible_nodes(graph, deg)) {
        double width = 0.3 + 0.1 * static_cast<double>(deg[i]);
        out += "  \"" + graph.terms[i] + "\" [fillcolor=" +
               (graph.term_class[i] == Label::commercial ? "red" : "blue") +
               ", fontcolor=white, width=" + format_fixed(width, 2) + "];\n";
    }
    const char* arrow = graph.directed ? " -> " : " -- ";
    for (const auto& e : graph.edges) {
        out += "  \"" + graph.terms[e.from] + "\"" + arrow + "\"" + graph.terms[e.to] + "\" [label=\"" +
               format_fixed(e.weight, 2) + "\"];\n";
    }
    out += "}\n";
    return out;
}

void export_graph(const CoocGraph& graph, const std::string& path, const std::string& format) {
    if (format == "json")
        atomic_write_file(path, graph_to_json(graph));
    else if (format == "dot")
        atomic_write_file(path, graph_to_dot(graph));
    else
        throw std::runtime_error("unknown graph format \"" + format + "\" (expected json|dot)");
}

}  // namespace adlex
