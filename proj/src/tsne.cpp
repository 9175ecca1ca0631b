#include "adlex/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "adlex/io.hpp"
#include "adlex/rng.hpp"

namespace adlex {

namespace {

// Row-major squared Euclidean distances between densified sparse vectors:
// d2 = |a|^2 + |b|^2 - 2 a.b
std::vector<double> squared_distances(const std::vector<DocVector>& X) {
    const std::size_t n = X.size();
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& [idx, v] : X[i].entries) s += v * v;
        sq[i] = s;
    }
    std::vector<double> d2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0;
            std::size_t a = 0, b = 0;
            const auto& ea = X[i].entries;
            const auto& eb = X[j].entries;
            while (a < ea.size() && b < eb.size()) {
                if (ea[a].first == eb[b].first) {
                    dot += ea[a].second * eb[b].second;
                    ++a;
                    ++b;
                } else if (ea[a].first < eb[b].first) {
                    ++a;
                } else {
                    ++b;
                }
            }
            double d = std::max(sq[i] + sq[j] - 2.0 * dot, 0.0);
            d2[i * n + j] = d;
            d2[j * n + i] = d;
        }
    }
    return d2;
}

// Conditional row probabilities for one bandwidth; returns entropy in bits.
double fill_row(const std::vector<double>& d2, std::size_t n, std::size_t i, double beta,
                std::vector<double>& row) {
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
        if (j != i) min_d = std::min(min_d, d2[i * n + j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            row[j] = 0.0;
            continue;
        }
        row[j] = std::exp(-beta * (d2[i * n + j] - min_d));
        sum += row[j];
    }
    double entropy_nats = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row[j] /= sum;
        if (row[j] > 0.0) entropy_nats -= row[j] * std::log(row[j]);
    }
    return entropy_nats / std::log(2.0);
}

}  // namespace

std::vector<double> pairwise_affinities(const std::vector<DocVector>& X, double perplexity) {
    const std::size_t n = X.size();
    if (n < 4) throw std::runtime_error("t-SNE needs at least 4 points");
    if (!(perplexity >= 1.0)) throw std::runtime_error("perplexity must be >= 1");
    if (perplexity >= static_cast<double>(n)) throw std::runtime_error("perplexity must be < n");

    std::vector<double> d2 = squared_distances(X);
    bool any_positive = false;
    for (double d : d2) any_positive |= d > 0.0;
    if (!any_positive) throw std::runtime_error("degenerate input: all points coincident");

    const double target_bits = std::log2(perplexity);
    std::vector<double> cond(n * n, 0.0);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        double beta = 1.0, beta_lo = 0.0, beta_hi = std::numeric_limits<double>::infinity();
        double entropy = fill_row(d2, n, i, beta, row);
        for (int step = 0; step < 50 && std::fabs(entropy - target_bits) > 1e-5; ++step) {
            if (entropy > target_bits) {  // too flat -> narrow the kernel
                beta_lo = beta;
                beta = std::isinf(beta_hi) ? beta * 2.0 : 0.5 * (beta_lo + beta_hi);
            } else {
                beta_hi = beta;
                beta = beta_lo == 0.0 ? beta / 2.0 : 0.5 * (beta_lo + beta_hi);
            }
            entropy = fill_row(d2, n, i, beta, row);
        }
        for (std::size_t j = 0; j < n; ++j) cond[i * n + j] = row[j];
    }

    std::vector<double> P(n * n, 0.0);
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) P[i * n + j] = (cond[i * n + j] + cond[j * n + i]) * scale;
    return P;
}

namespace {

// Unnormalized Student-t similarities and their sum.
double student_t_kernel(const std::vector<std::array<double, 2>>& Y, std::vector<double>& num) {
    const std::size_t n = Y.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = Y[i][0] - Y[j][0];
            double dy = Y[i][1] - Y[j][1];
            double q = 1.0 / (1.0 + dx * dx + dy * dy);
            num[i * n + j] = q;
            num[j * n + i] = q;
            sum += 2.0 * q;
        }
    }
    return sum;
}

}  // namespace

double kl_divergence(const std::vector<double>& P, const std::vector<std::array<double, 2>>& Y) {
    const std::size_t n = Y.size();
    std::vector<double> num(n * n);
    double sum = student_t_kernel(Y, num);
    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double p = P[i * n + j];
            if (p <= 0.0) continue;
            double q = std::max(num[i * n + j] / sum, 1e-12);
            kl += p * std::log(p / q);
        }
    }
    return kl;
}

std::vector<std::array<double, 2>> tsne_gradient(const std::vector<double>& P,
                                                 const std::vector<std::array<double, 2>>& Y) {
    const std::size_t n = Y.size();
    std::vector<double> num(n * n);
    double sum = student_t_kernel(Y, num);
    std::vector<std::array<double, 2>> grad(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double q = num[i * n + j] / sum;
            double mult = 4.0 * (P[i * n + j] - q) * num[i * n + j];
            grad[i][0] += mult * (Y[i][0] - Y[j][0]);
            grad[i][1] += mult * (Y[i][1] - Y[j][1]);
        }
    }
    return grad;
}

Embedding tsne(const std::vector<DocVector>& X, const std::vector<std::string>& ids,
               const std::vector<Label>& labels, const std::vector<std::string>& media,
               const TsneParams& params) {
    const std::size_t n = X.size();
    if (ids.size() != n || labels.size() != n || media.size() != n)
        throw std::runtime_error("t-SNE metadata size mismatch");

    std::vector<double> P = pairwise_affinities(X, params.perplexity);

    const int exaggeration_end = 250;
    std::vector<double> P_ex = P;
    if (params.iters > 0 && params.early_exaggeration != 1.0)
        for (double& p : P_ex) p *= params.early_exaggeration;

    Rng rng(derive_seed(params.seed, "tsne-init"));
    std::vector<std::array<double, 2>> Y(n);
    for (auto& y : Y) {
        y[0] = 1e-4 * rng.next_normal();
        y[1] = 1e-4 * rng.next_normal();
    }

    std::vector<std::array<double, 2>> velocity(n, {0.0, 0.0});
    std::vector<std::array<double, 2>> gains(n, {1.0, 1.0});

    Embedding out;
    out.params = params;

    for (int iter = 0; iter < params.iters; ++iter) {
        const bool exaggerated = iter < exaggeration_end;
        const double momentum = iter < exaggeration_end ? 0.5 : 0.8;
        auto grad = tsne_gradient(exaggerated ? P_ex : P, Y);

        for (std::size_t i = 0; i < n; ++i) {
            for (int d = 0; d < 2; ++d) {
                if (!std::isfinite(grad[i][d])) throw std::runtime_error("non-finite t-SNE gradient");
                // gain grows while descent direction stays consistent
                bool same_sign = (grad[i][d] > 0.0) == (velocity[i][d] > 0.0);
                gains[i][d] = same_sign ? std::max(gains[i][d] * 0.8, 0.01) : gains[i][d] + 0.2;
                velocity[i][d] = momentum * velocity[i][d] - params.learning_rate * gains[i][d] * grad[i][d];
                Y[i][d] += velocity[i][d];
            }
        }
        // keep the embedding centered
        double cx = 0.0, cy = 0.0;
        for (const auto& y : Y) {
            cx += y[0];
            cy += y[1];
        }
        cx /= static_cast<double>(n);
        cy /= static_cast<double>(n);
        for (auto& y : Y) {
            y[0] -= cx;
            y[1] -= cy;
        }

        if ((iter + 1) % 50 == 0 || iter + 1 == params.iters) {
            double kl = kl_divergence(P, Y);
            out.kl_trace.emplace_back(iter + 1, kl);
            std::fprintf(stderr, "%d,%s\n", iter + 1, format_double_sig(kl, 10).c_str());
        }
    }

    out.points = std::move(Y);
    out.ids = ids;
    out.labels = labels;
    out.media = media;
    out.final_kl = out.kl_trace.empty() ? kl_divergence(P, out.points) : out.kl_trace.back().second;
    return out;
}

std::string scatter_to_csv(const Embedding& embedding) {
    std::string out = "id,x,y,label,medium\n";
    for (std::size_t i = 0; i < embedding.points.size(); ++i) {
        out += embedding.ids[i] + "," + format_double(embedding.points[i][0]) + "," +
               format_double(embedding.points[i][1]) + "," + label_name(embedding.labels[i]) + "," +
               embedding.media[i] + "\n";
    }
    return out;
}

}  // namespace adlex
