#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "adlex/rng.hpp"
#include "adlex/tsne.hpp"

using namespace adlex;

namespace {

DocVector dense_point(const std::vector<double>& coords) {
    DocVector v;
    for (std::uint32_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0.0) v.entries.emplace_back(i, coords[i]);
    return v;
}

std::vector<DocVector> gaussian_clusters(int per_cluster, int n_clusters, double spread, double separation,
                                         std::uint64_t seed, std::vector<int>* cluster_of = nullptr) {
    Rng rng(seed);
    std::vector<DocVector> points;
    for (int c = 0; c < n_clusters; ++c) {
        for (int i = 0; i < per_cluster; ++i) {
            std::vector<double> coords(static_cast<std::size_t>(n_clusters) * 2, 0.0);
            for (std::size_t d = 0; d < coords.size(); ++d) coords[d] = spread * rng.next_normal();
            coords[static_cast<std::size_t>(2 * c)] += separation;
            points.push_back(dense_point(coords));
            if (cluster_of) cluster_of->push_back(c);
        }
    }
    return points;
}

// Mean silhouette over squared-Euclidean-free (plain Euclidean) distances in 2-D.
double silhouette(const std::vector<std::array<double, 2>>& Y, const std::vector<int>& cluster) {
    const std::size_t n = Y.size();
    int k = 0;
    for (int c : cluster) k = std::max(k, c + 1);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> dist_sum(static_cast<std::size_t>(k), 0.0);
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double dx = Y[i][0] - Y[j][0], dy = Y[i][1] - Y[j][1];
            double d = std::sqrt(dx * dx + dy * dy);
            dist_sum[static_cast<std::size_t>(cluster[j])] += d;
            ++counts[static_cast<std::size_t>(cluster[j])];
        }
        int own = cluster[i];
        double a = dist_sum[static_cast<std::size_t>(own)] / std::max(counts[static_cast<std::size_t>(own)], 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == own || counts[static_cast<std::size_t>(c)] == 0) continue;
            b = std::min(b, dist_sum[static_cast<std::size_t>(c)] / counts[static_cast<std::size_t>(c)]);
        }
        total += (b - a) / std::max(a, b);
    }
    return total / static_cast<double>(n);
}

std::vector<std::string> make_ids(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    return ids;
}

}  // namespace

TEST_CASE("four equidistant points get uniform affinities") {
    std::vector<DocVector> X;
    for (int i = 0; i < 4; ++i) {
        std::vector<double> coords(4, 0.0);
        coords[static_cast<std::size_t>(i)] = 3.0;
        X.push_back(dense_point(coords));
    }
    auto P = pairwise_affinities(X, 2.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(P[i * 4 + i] == 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            CHECK(P[i * 4 + j] == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("affinity matrix is symmetric, nonnegative and sums to one") {
    Rng rng(91);
    std::vector<DocVector> X;
    for (int i = 0; i < 25; ++i) {
        std::vector<double> coords(8);
        for (auto& c : coords) c = rng.next_double() * 2.0;
        X.push_back(dense_point(coords));
    }
    auto P = pairwise_affinities(X, 10.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < 25; ++i) {
        CHECK(P[i * 25 + i] == 0.0);
        for (std::size_t j = 0; j < 25; ++j) {
            CHECK(P[i * 25 + j] >= 0.0);
            CHECK(P[i * 25 + j] == P[j * 25 + i]);
            sum += P[i * 25 + j];
        }
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("row entropies match the perplexity target") {
    Rng rng(92);
    std::vector<DocVector> X;
    const std::size_t n = 30;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> coords(6);
        for (auto& c : coords) c = rng.next_normal();
        X.push_back(dense_point(coords));
    }
    const double perplexity = 7.0;
    auto P = pairwise_affinities(X, perplexity);
    // un-symmetrize is not possible; instead verify indirectly: each row of
    // the symmetrized matrix carries weight close to 1/n
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += P[i * n + j];
        CHECK(row == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(0.35));
    }
}

TEST_CASE("two far clusters keep their affinity mass inside the clusters") {
    std::vector<int> cluster;
    auto X = gaussian_clusters(4, 2, 0.01, 100.0, 93, &cluster);
    auto P = pairwise_affinities(X, 2.0);
    double within = 0.0, total = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X.size(); ++j) {
            total += P[i * X.size() + j];
            if (cluster[i] == cluster[j]) within += P[i * X.size() + j];
        }
    }
    CHECK(within / total > 0.99);
}

TEST_CASE("affinity preconditions") {
    std::vector<DocVector> three(3, dense_point({1.0}));
    CHECK_THROWS_AS(pairwise_affinities(three, 2.0), std::runtime_error);

    std::vector<DocVector> coincident(6, dense_point({1.0, 2.0}));
    CHECK_THROWS_WITH_AS(pairwise_affinities(coincident, 3.0), doctest::Contains("coincident"),
                         std::runtime_error);

    std::vector<DocVector> X = gaussian_clusters(3, 2, 0.1, 5.0, 94);
    CHECK_THROWS_AS(pairwise_affinities(X, 6.0), std::runtime_error);  // perplexity >= n
}

TEST_CASE("analytic gradient matches central finite differences") {
    Rng rng(95);
    const std::size_t n = 8;
    std::vector<DocVector> X;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> coords(5);
        for (auto& c : coords) c = rng.next_normal();
        X.push_back(dense_point(coords));
    }
    auto P = pairwise_affinities(X, 3.0);

    std::vector<std::array<double, 2>> Y(n);
    for (auto& y : Y) y = {rng.next_normal(), rng.next_normal()};

    auto grad = tsne_gradient(P, Y);
    const double h = 1e-5;
    for (std::size_t i = 0; i < n; ++i) {
        for (int d = 0; d < 2; ++d) {
            auto Yp = Y, Ym = Y;
            Yp[i][d] += h;
            Ym[i][d] -= h;
            double numeric = (kl_divergence(P, Yp) - kl_divergence(P, Ym)) / (2.0 * h);
            double denom = std::max(std::fabs(numeric), 1e-8);
            CHECK(std::fabs(grad[i][d] - numeric) / denom < 1e-4);
        }
    }
}

TEST_CASE("kl divergence is invariant under rigid motions") {
    Rng rng(96);
    const std::size_t n = 12;
    auto X = gaussian_clusters(4, 3, 0.3, 4.0, 97);
    auto P = pairwise_affinities(X, 4.0);
    std::vector<std::array<double, 2>> Y(n);
    for (auto& y : Y) y = {rng.next_normal(), rng.next_normal()};

    const double angle = 0.83;
    std::vector<std::array<double, 2>> rotated(n);
    for (std::size_t i = 0; i < n; ++i) {
        rotated[i][0] = std::cos(angle) * Y[i][0] - std::sin(angle) * Y[i][1] + 3.5;
        rotated[i][1] = std::sin(angle) * Y[i][0] + std::cos(angle) * Y[i][1] - 1.25;
    }
    CHECK(kl_divergence(P, Y) == doctest::Approx(kl_divergence(P, rotated)).epsilon(1e-9));
}

TEST_CASE("small simplex embeds to a finite symmetric configuration") {
    std::vector<DocVector> X;
    for (int i = 0; i < 4; ++i) {
        std::vector<double> coords(4, 0.0);
        coords[static_cast<std::size_t>(i)] = 2.0;
        X.push_back(dense_point(coords));
    }
    TsneParams params;
    params.perplexity = 2.0;
    params.iters = 400;
    Embedding e = tsne(X, make_ids(4), std::vector<Label>(4, Label::editorial),
                       std::vector<std::string>(4, "m"), params);
    std::vector<double> dists;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            double dx = e.points[i][0] - e.points[j][0];
            double dy = e.points[i][1] - e.points[j][1];
            CHECK(std::isfinite(dx));
            CHECK(std::isfinite(dy));
            dists.push_back(std::sqrt(dx * dx + dy * dy));
        }
    // A regular 3-simplex cannot embed in the plane; the symmetric planar
    // optimum is a square: four equal sides plus two equal diagonals.
    std::sort(dists.begin(), dists.end());
    CHECK((dists[3] - dists[0]) / dists[3] < 0.10);  // sides agree
    CHECK((dists[5] - dists[4]) / dists[5] < 0.10);  // diagonals agree
    CHECK(dists[4] / dists[0] == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("three gaussian clusters separate with kl non-increasing after exaggeration") {
    std::vector<int> cluster;
    auto X = gaussian_clusters(50, 3, 0.5, 10.0, 98, &cluster);
    TsneParams params;  // perplexity 30, 1000 iters, seed 2
    std::vector<Label> labels(X.size(), Label::editorial);
    Embedding e = tsne(X, make_ids(X.size()), labels, std::vector<std::string>(X.size(), "m"), params);

    CHECK(silhouette(e.points, cluster) >= 0.5);

    bool seen_post = false;
    double previous = 0.0;
    for (const auto& [iter, kl] : e.kl_trace) {
        CHECK(kl >= 0.0);
        if (iter >= 250) {
            if (seen_post) CHECK(kl <= previous + 1e-6);
            previous = kl;
            seen_post = true;
        }
    }
    CHECK(e.final_kl == e.kl_trace.back().second);
}

TEST_CASE("tsne is deterministic per seed") {
    auto X = gaussian_clusters(5, 2, 0.4, 6.0, 99);
    TsneParams params;
    params.perplexity = 3.0;
    params.iters = 120;
    std::vector<Label> labels(X.size(), Label::commercial);
    std::vector<std::string> media(X.size(), "m");
    Embedding a = tsne(X, make_ids(X.size()), labels, media, params);
    Embedding b = tsne(X, make_ids(X.size()), labels, media, params);
    CHECK(a.points == b.points);

    params.seed = 3;
    Embedding c = tsne(X, make_ids(X.size()), labels, media, params);
    CHECK(a.points != c.points);
}

TEST_CASE("scatter csv round-trips coordinates exactly") {
    auto X = gaussian_clusters(3, 2, 0.3, 5.0, 100);
    TsneParams params;
    params.perplexity = 2.0;
    params.iters = 60;
    std::vector<Label> labels(X.size(), Label::editorial);
    labels[0] = Label::commercial;
    Embedding e = tsne(X, make_ids(X.size()), labels, std::vector<std::string>(X.size(), "nu"), params);

    std::string csv = scatter_to_csv(e);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "id,x,y,label,medium");
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string id, x, y, label, medium;
        std::getline(fields, id, ',');
        std::getline(fields, x, ',');
        std::getline(fields, y, ',');
        std::getline(fields, label, ',');
        std::getline(fields, medium, ',');
        CHECK(id == e.ids[row]);
        CHECK(std::stod(x) == e.points[row][0]);  // exact round-trip
        CHECK(std::stod(y) == e.points[row][1]);
        CHECK(label == label_name(e.labels[row]));
        CHECK(medium == "nu");
        ++row;
    }
    CHECK(row == X.size());
}
