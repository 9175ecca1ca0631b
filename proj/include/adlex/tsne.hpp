#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

struct TsneParams {
    double perplexity = 30.0;
    int iters = 1000;
    std::uint64_t seed = 2;
    double learning_rate = 200.0;
    double early_exaggeration = 12.0;  // applied for the first 250 iterations
};

struct Embedding {
    std::vector<std::array<double, 2>> points;
    std::vector<std::string> ids;
    std::vector<Label> labels;
    std::vector<std::string> media;
    double final_kl = 0.0;
    std::vector<std::pair<int, double>> kl_trace;  // (iteration, KL) every 50 iterations
    TsneParams params;
};

// Symmetric input affinities: squared Euclidean distances on densified
// vectors, per-row bandwidth found by binary search until the row entropy
// matches log2(perplexity) within 1e-5 (max 50 steps), conditionals
// normalized then symmetrized to P = (P|i + P|j) / 2n. Zero diagonal, sums
// to 1. Row-major n*n result.
std::vector<double> pairwise_affinities(const std::vector<DocVector>& X, double perplexity);

double kl_divergence(const std::vector<double>& P, const std::vector<std::array<double, 2>>& Y);

// Exact-gradient t-SNE with Student-t low-dimensional kernel. Gaussian init
// (sigma 1e-4), early exaggeration for the first 250 iterations, momentum
// 0.5 switching to 0.8 at iteration 250, adaptive per-coordinate gains.
// KL against the unexaggerated P is recorded every 50 iterations and
// progress lines "iter,kl" go to stderr.
Embedding tsne(const std::vector<DocVector>& X, const std::vector<std::string>& ids,
               const std::vector<Label>& labels, const std::vector<std::string>& media,
               const TsneParams& params = {});

// Analytic gradient of KL(P || Q(Y)); exposed for the finite-difference check.
std::vector<std::array<double, 2>> tsne_gradient(const std::vector<double>& P,
                                                 const std::vector<std::array<double, 2>>& Y);

// CSV `id,x,y,label,medium`, row order = input order, coordinates exact
// round-trip.
std::string scatter_to_csv(const Embedding& embedding);

}  // namespace adlex
