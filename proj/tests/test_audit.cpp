#include <doctest.h>

#include <stdexcept>

#include "adlex/audit.hpp"
#include "adlex/eval.hpp"
#include "adlex/synth.hpp"

using namespace adlex;

TEST_CASE("planted disclaimer token surfaces in the top candidates") {
    SynthSpec spec;
    spec.n_docs = 200;
    spec.s = 0.6;
    spec.len_min = 20;
    spec.len_max = 40;
    spec.seed = 61;
    spec.leaker = LeakerSpec{"aanbieding", Label::commercial, "m2"};
    Corpus corpus = generate(spec);

    Vocabulary vocab = build_vocabulary(corpus, 600, {});
    auto tfidf = apply_tfidf(vectorize_corpus(corpus, vocab), vocab);
    std::vector<Label> y;
    for (const auto& d : corpus.docs) y.push_back(d.label);
    LinearModel model = train_linear_svm(tfidf, y, vocab.size());

    auto candidates = audit_leaker_candidates(model, corpus, vocab);
    REQUIRE(candidates.size() == vocab.size());
    bool in_top5 = false;
    for (std::size_t i = 0; i < 5 && i < candidates.size(); ++i)
        in_top5 |= candidates[i].term == "aanbieding";
    CHECK(in_top5);

    // the planted token is fully exclusive on both axes
    for (const auto& c : candidates) {
        if (c.term != "aanbieding") continue;
        CHECK(c.class_exclusivity == 1.0);
        CHECK(c.medium_exclusivity == 1.0);
    }

    std::string csv = candidates_to_csv(candidates);
    CHECK(csv.find("term,weight,class_exclusivity,medium_exclusivity,rank_score\n") == 0);
}

TEST_CASE("zero-weight terms rank at zero") {
    Corpus corpus;
    for (int i = 0; i < 4; ++i) {
        Document d;
        d.id = "d" + std::to_string(i);
        d.medium = i % 2 ? "a" : "b";
        d.label = i < 2 ? Label::commercial : Label::editorial;
        d.body = i < 2 ? "koop nu" : "nieuws hier";
        corpus.docs.push_back(d);
    }
    corpus.rebuild_media();
    Vocabulary vocab = build_vocabulary(corpus, 10, {});
    LinearModel model;
    model.weights.assign(vocab.size(), 0.0);
    model.weights[vocab.index.at("koop")] = 2.0;

    auto candidates = audit_leaker_candidates(model, corpus, vocab);
    CHECK(candidates[0].term == "koop");
    CHECK(candidates[0].rank_score > 0.0);
    for (const auto& c : candidates)
        if (c.term != "koop") CHECK(c.rank_score == 0.0);
}
