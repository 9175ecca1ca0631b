#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "adlex/rng.hpp"
#include "adlex/vectorize.hpp"

using namespace adlex;

namespace {

Corpus corpus_from_bodies(const std::vector<std::string>& bodies) {
    Corpus c;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        Document d;
        d.id = "d" + std::to_string(i);
        d.medium = "m";
        d.label = Label::editorial;
        d.body = bodies[i];
        c.docs.push_back(d);
    }
    c.rebuild_media();
    return c;
}

}  // namespace

TEST_CASE("vocabulary keeps the highest-count terms with lexicographic ties") {
    Corpus c = corpus_from_bodies({"aa aa bb", "bb cc"});
    Vocabulary v = build_vocabulary(c, 2, {});
    REQUIRE(v.size() == 2);
    CHECK(v.terms == std::vector<std::string>{"aa", "bb"});  // counts 2,2 beat cc=1
    CHECK(v.df[v.index.at("aa")] == 1);
    CHECK(v.df[v.index.at("bb")] == 2);

    Vocabulary all = build_vocabulary(c, 100, {});
    CHECK(all.size() == 3);  // cap above distinct count keeps everything

    CHECK_THROWS_AS(build_vocabulary(Corpus{}, 10, {}), std::runtime_error);
}

TEST_CASE("count tie between equal-count terms prefers lexicographically smaller") {
    Corpus c = corpus_from_bodies({"zz aa"});
    Vocabulary v = build_vocabulary(c, 1, {});
    CHECK(v.terms == std::vector<std::string>{"aa"});
}

TEST_CASE("idf formula and monotonicity") {
    Corpus c = corpus_from_bodies({"aa bb", "aa cc", "aa", "bb"});
    Vocabulary v = build_vocabulary(c, 10, {});
    // df(aa)=3, df(bb)=2, df(cc)=1, n=4
    CHECK(v.idf[v.index.at("aa")] == doctest::Approx(std::log(5.0 / 4.0) + 1.0).epsilon(1e-12));
    CHECK(v.idf[v.index.at("bb")] == doctest::Approx(std::log(5.0 / 3.0) + 1.0).epsilon(1e-12));
    CHECK(v.idf[v.index.at("cc")] == doctest::Approx(std::log(5.0 / 2.0) + 1.0).epsilon(1e-12));
    CHECK(v.idf[v.index.at("aa")] < v.idf[v.index.at("bb")]);
    CHECK(v.idf[v.index.at("bb")] < v.idf[v.index.at("cc")]);
    for (double idf : v.idf) CHECK(idf > 0.0);
}

TEST_CASE("vectorize_counts counts vocabulary terms only") {
    Corpus c = corpus_from_bodies({"bb aa aa", "qq ww"});
    Vocabulary v = build_vocabulary(corpus_from_bodies({"aa bb"}), 10, {});
    DocVector x = vectorize_counts(c.docs[0], v);
    REQUIRE(x.entries.size() == 2);
    CHECK(x.get(v.index.at("aa")) == 2.0);
    CHECK(x.get(v.index.at("bb")) == 1.0);

    CHECK(vectorize_counts(c.docs[1], v).entries.empty());  // all OOV
    Document empty;
    CHECK(vectorize_counts(empty, v).entries.empty());
}

TEST_CASE("tf-idf worked example") {
    Corpus c = corpus_from_bodies({"aa bb", "aa cc"});
    Vocabulary v = build_vocabulary(c, 10, {});
    auto vectors = apply_tfidf(vectorize_corpus(c, v), v);

    CHECK(v.idf[v.index.at("aa")] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.idf[v.index.at("bb")] == doctest::Approx(1.4054651081).epsilon(1e-9));

    // d1: weights (1.0, 1.405465) -> normalized (0.57974, 0.81480)
    CHECK(vectors[0].get(v.index.at("aa")) == doctest::Approx(0.57974).epsilon(1e-4));
    CHECK(vectors[0].get(v.index.at("bb")) == doctest::Approx(0.81480).epsilon(1e-4));
    CHECK(vectors[0].mode == NormMode::tfidf_l2);
}

TEST_CASE("tf-idf normalization edge cases") {
    Corpus c = corpus_from_bodies({"solo", "solo other", ""});
    Vocabulary v = build_vocabulary(c, 10, {});
    auto vectors = apply_tfidf(vectorize_corpus(c, v), v);
    CHECK(vectors[0].entries.size() == 1);
    CHECK(vectors[0].entries[0].second == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vectors[2].entries.empty());
}

TEST_CASE("non-empty tf-idf vectors are unit norm") {
    Rng rng(21);
    std::vector<std::string> words{"aa", "bb", "cc", "dd", "ee", "ff", "gg", "hh"};
    std::vector<std::string> bodies;
    for (int d = 0; d < 40; ++d) {
        std::string body;
        std::size_t len = 1 + rng.below(30);
        for (std::size_t t = 0; t < len; ++t) {
            if (t) body += ' ';
            body += words[rng.below(words.size())];
        }
        bodies.push_back(body);
    }
    Corpus c = corpus_from_bodies(bodies);
    Vocabulary v = build_vocabulary(c, 6, {});
    for (const auto& x : apply_tfidf(vectorize_corpus(c, v), v)) {
        if (x.entries.empty()) continue;
        CHECK(std::fabs(x.l2_norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("vocabulary and vectors are permutation-invariant over doc order") {
    std::vector<std::string> bodies{"aa bb cc", "bb cc dd", "dd ee", "aa ff gg hh", "cc cc"};
    Corpus c = corpus_from_bodies(bodies);
    Vocabulary v1 = build_vocabulary(c, 5, {});

    Corpus shuffled = c;
    Rng rng(5);
    rng.shuffle(shuffled.docs);
    Vocabulary v2 = build_vocabulary(shuffled, 5, {});
    CHECK(v1.terms == v2.terms);
    CHECK(v1.df == v2.df);

    auto x1 = apply_tfidf(vectorize_corpus(c, v1), v1);
    auto x2 = apply_tfidf(vectorize_corpus(shuffled, v2), v2);
    for (std::size_t i = 0; i < c.docs.size(); ++i) {
        std::size_t j = 0;
        while (shuffled.docs[j].id != c.docs[i].id) ++j;
        CHECK(x1[i].entries == x2[j].entries);
    }
}

TEST_CASE("vocabulary CSV export shape") {
    Corpus c = corpus_from_bodies({"aa bb", "aa"});
    Vocabulary v = build_vocabulary(c, 10, {});
    std::string csv = v.to_csv();
    CHECK(csv.find("term,index,df,idf\n") == 0);
    CHECK(csv.find("aa,0,2,") != std::string::npos);
}
