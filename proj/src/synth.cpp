#include "adlex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "adlex/rng.hpp"

namespace adlex {

using nlohmann::json;

namespace {

std::string pool_token(const char* prefix, int k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%04d", prefix, k);
    return buf;
}

struct Pools {
    std::vector<std::string> commercial;
    std::vector<std::string> editorial;
    std::vector<std::string> background;
    std::vector<std::vector<std::string>> medium_nuisance;          // per medium
    std::vector<std::vector<std::string>> medium_commercial;        // per medium
    std::vector<std::vector<std::string>> medium_editorial;         // per medium
};

Pools make_pools(const SynthSpec& spec, std::size_t n_media) {
    Pools p;
    for (int k = 0; k < spec.commercial_terms; ++k) p.commercial.push_back(pool_token("comm", k));
    for (int k = 0; k < spec.editorial_terms; ++k) p.editorial.push_back(pool_token("edit", k));
    for (int k = 0; k < spec.background_terms; ++k) p.background.push_back(pool_token("bg", k));
    for (std::size_t m = 0; m < n_media; ++m) {
        std::string nprefix = "m" + std::to_string(m) + "n";
        std::string cprefix = "m" + std::to_string(m) + "c";
        std::string eprefix = "m" + std::to_string(m) + "e";
        std::vector<std::string> nuis, comm, edit;
        for (int k = 0; k < spec.medium_nuisance_terms; ++k) nuis.push_back(pool_token(nprefix.c_str(), k));
        for (int k = 0; k < spec.medium_class_terms; ++k) comm.push_back(pool_token(cprefix.c_str(), k));
        for (int k = 0; k < spec.medium_class_terms; ++k) edit.push_back(pool_token(eprefix.c_str(), k));
        p.medium_nuisance.push_back(std::move(nuis));
        p.medium_commercial.push_back(std::move(comm));
        p.medium_editorial.push_back(std::move(edit));
    }
    return p;
}

struct MediumParams {
    double s, jargon, confusion, nuisance;
};

MediumParams params_for(const SynthSpec& spec, const SynthMedium& m) {
    MediumParams p;
    p.s = m.s < 0.0 ? spec.s : m.s;
    p.jargon = m.jargon_frac;
    p.confusion = m.confusion < 0.0 ? spec.confusion : m.confusion;
    p.nuisance = m.nuisance < 0.0 ? spec.nuisance : m.nuisance;
    return p;
}

const std::string& sample_token(Rng& rng, const Pools& pools, const MediumParams& p, std::size_t medium,
                                Label label) {
    if (rng.next_double() < p.s) {
        if (p.jargon > 0.0 && rng.next_double() < p.jargon) {
            const auto& pool =
                label == Label::commercial ? pools.medium_commercial[medium] : pools.medium_editorial[medium];
            return pool[rng.below(pool.size())];
        }
        Label effective = label;
        if (p.confusion > 0.0 && rng.next_double() < p.confusion)
            effective = label == Label::commercial ? Label::editorial : Label::commercial;
        const auto& pool = effective == Label::commercial ? pools.commercial : pools.editorial;
        return pool[rng.below(pool.size())];
    }
    if (p.nuisance > 0.0 && rng.next_double() < p.nuisance) {
        const auto& pool = pools.medium_nuisance[medium];
        return pool[rng.below(pool.size())];
    }
    return pools.background[rng.below(pools.background.size())];
}

// Largest-remainder apportionment of n into weighted parts.
std::vector<int> apportion(const std::vector<double>& weights, int n) {
    std::vector<int> counts(weights.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double exact = weights[i] * n;
        counts[i] = static_cast<int>(exact);
        assigned += counts[i];
        remainders.push_back({exact - counts[i], i});
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int r = 0; r < n - assigned; ++r) ++counts[remainders[static_cast<std::size_t>(r)].second];
    return counts;
}

double log_density(const std::string& token, const Pools& pools, const MediumParams& p, std::size_t medium,
                   Label label) {
    auto in_pool = [&token](const std::vector<std::string>& pool) {
        return std::binary_search(pool.begin(), pool.end(), token);
    };
    double density = 0.0;
    const auto& own_jargon =
        label == Label::commercial ? pools.medium_commercial[medium] : pools.medium_editorial[medium];
    if (p.jargon > 0.0 && !own_jargon.empty() && in_pool(own_jargon))
        density += p.s * p.jargon / static_cast<double>(own_jargon.size());
    const auto& own_pool = label == Label::commercial ? pools.commercial : pools.editorial;
    const auto& other_pool = label == Label::commercial ? pools.editorial : pools.commercial;
    if (in_pool(own_pool))
        density += p.s * (1.0 - p.jargon) * (1.0 - p.confusion) / static_cast<double>(own_pool.size());
    if (in_pool(other_pool))
        density += p.s * (1.0 - p.jargon) * p.confusion / static_cast<double>(other_pool.size());
    if (p.nuisance > 0.0 && !pools.medium_nuisance[medium].empty() && in_pool(pools.medium_nuisance[medium]))
        density += (1.0 - p.s) * p.nuisance / static_cast<double>(pools.medium_nuisance[medium].size());
    if (in_pool(pools.background))
        density += (1.0 - p.s) * (1.0 - p.nuisance) / static_cast<double>(pools.background.size());
    return std::log(std::max(density, 1e-300));
}

}  // namespace

std::vector<SynthMedium> SynthSpec::resolved_media() const {
    if (!media.empty()) return media;
    std::vector<SynthMedium> four;
    for (int m = 0; m < 4; ++m) {
        SynthMedium sm;
        sm.name = "m" + std::to_string(m);
        sm.share = 0.25;
        four.push_back(sm);
    }
    return four;
}

void SynthSpec::validate() const {
    auto resolved = resolved_media();
    double total = 0.0;
    for (const auto& m : resolved) {
        if (m.share < 0.0) throw std::runtime_error("medium share must be >= 0");
        total += m.share;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw std::runtime_error("medium shares must sum to 1");
    if (class_balance < 0.0 || class_balance > 1.0) throw std::runtime_error("class balance must be in [0,1]");
    if (s < 0.0 || s > 1.0) throw std::runtime_error("signal strength s must be in [0,1]");
    if (len_min < 1 || len_max < len_min) throw std::runtime_error("invalid document length range");
    if (n_docs < 1) throw std::runtime_error("n_docs must be >= 1");
    if (commercial_terms < 1 || editorial_terms < 1 || background_terms < 1)
        throw std::runtime_error("token pools must be non-empty");
}

Corpus generate(const SynthSpec& spec) {
    spec.validate();
    auto media = spec.resolved_media();
    Pools pools = make_pools(spec, media.size());

    std::vector<double> shares;
    for (const auto& m : media) shares.push_back(m.share);
    std::vector<int> per_medium = apportion(shares, spec.n_docs);

    struct Slot {
        std::size_t medium;
        Label label;
    };
    std::vector<Slot> slots;
    for (std::size_t m = 0; m < media.size(); ++m) {
        int n_comm = apportion({spec.class_balance, 1.0 - spec.class_balance}, per_medium[m])[0];
        for (int i = 0; i < per_medium[m]; ++i)
            slots.push_back({m, i < n_comm ? Label::commercial : Label::editorial});
    }
    Rng order_rng(derive_seed(spec.seed, "synth-order"));
    order_rng.shuffle(slots);

    Corpus corpus;
    for (std::size_t d = 0; d < slots.size(); ++d) {
        const Slot& slot = slots[d];
        MediumParams params = params_for(spec, media[slot.medium]);
        Rng rng(derive_seed(spec.seed, "synth-doc", d));

        int length = static_cast<int>(rng.uniform_int(spec.len_min, spec.len_max));
        std::vector<std::string> tokens;
        tokens.reserve(static_cast<std::size_t>(length));
        for (int t = 0; t < length; ++t) tokens.push_back(sample_token(rng, pools, params, slot.medium, slot.label));

        if (spec.leaker && spec.leaker->label == slot.label && spec.leaker->medium == media[slot.medium].name) {
            std::size_t at = static_cast<std::size_t>(rng.below(tokens.size() + 1));
            tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), spec.leaker->token);
        }

        std::string body;
        std::int64_t until_break = rng.uniform_int(8, 14);
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            if (!body.empty()) body += ' ';
            body += tokens[t];
            if (--until_break == 0 && t + 1 < tokens.size()) {
                body += '.';
                until_break = rng.uniform_int(8, 14);
            }
        }
        body += '.';

        Document doc;
        char id[32];
        std::snprintf(id, sizeof(id), "doc%06zu", d);
        doc.id = id;
        doc.medium = media[slot.medium].name;
        doc.label = slot.label;
        doc.title = "synthetic document " + std::to_string(d);
        doc.body = std::move(body);
        corpus.docs.push_back(std::move(doc));
    }
    corpus.rebuild_media();
    return corpus;
}

std::string ground_truth_json(const SynthSpec& spec) {
    auto media = spec.resolved_media();
    Pools pools = make_pools(spec, media.size());
    json out;
    out["n_docs"] = spec.n_docs;
    out["class_balance"] = spec.class_balance;
    out["s"] = spec.s;
    out["nuisance"] = spec.nuisance;
    out["confusion"] = spec.confusion;
    out["len_min"] = spec.len_min;
    out["len_max"] = spec.len_max;
    out["seed"] = spec.seed;
    json jm = json::array();
    for (std::size_t m = 0; m < media.size(); ++m) {
        MediumParams p = params_for(spec, media[m]);
        jm.push_back({{"name", media[m].name},
                      {"share", media[m].share},
                      {"s", p.s},
                      {"jargon_frac", p.jargon},
                      {"confusion", p.confusion},
                      {"nuisance", p.nuisance},
                      {"nuisance_pool", pools.medium_nuisance[m]},
                      {"commercial_pool", pools.medium_commercial[m]},
                      {"editorial_pool", pools.medium_editorial[m]}});
    }
    out["media"] = std::move(jm);
    out["commercial_pool"] = pools.commercial;
    out["editorial_pool"] = pools.editorial;
    out["background_pool"] = pools.background;
    if (spec.leaker)
        out["leaker"] = {{"token", spec.leaker->token},
                         {"label", label_name(spec.leaker->label)},
                         {"medium", spec.leaker->medium}};
    return out.dump(2) + "\n";
}

BayesEstimate bayes_accuracy(const SynthSpec& spec, long n_mc, std::uint64_t seed) {
    spec.validate();
    auto media = spec.resolved_media();
    Pools pools = make_pools(spec, media.size());
    std::vector<double> shares;
    for (const auto& m : media) shares.push_back(m.share);

    const double log_prior =
        std::log(std::max(spec.class_balance, 1e-300)) - std::log(std::max(1.0 - spec.class_balance, 1e-300));

    long correct = 0;
    for (long trial = 0; trial < n_mc; ++trial) {
        Rng rng(derive_seed(seed, "bayes-mc", static_cast<std::uint64_t>(trial)));
        // sample medium from shares, class from balance
        double u = rng.next_double();
        std::size_t medium = media.size() - 1;
        double acc = 0.0;
        for (std::size_t m = 0; m < media.size(); ++m) {
            acc += shares[m];
            if (u < acc) {
                medium = m;
                break;
            }
        }
        Label label = rng.next_double() < spec.class_balance ? Label::commercial : Label::editorial;
        MediumParams params = params_for(spec, media[medium]);

        int length = static_cast<int>(rng.uniform_int(spec.len_min, spec.len_max));
        double llr = log_prior;
        for (int t = 0; t < length; ++t) {
            const std::string& token = sample_token(rng, pools, params, medium, label);
            llr += log_density(token, pools, params, medium, Label::commercial) -
                   log_density(token, pools, params, medium, Label::editorial);
        }
        Label predicted = llr > 0.0 ? Label::commercial : Label::editorial;
        if (predicted == label) ++correct;
    }

    BayesEstimate est;
    est.trials = n_mc;
    est.accuracy = static_cast<double>(correct) / static_cast<double>(n_mc);
    est.std_error = std::sqrt(est.accuracy * (1.0 - est.accuracy) / static_cast<double>(n_mc));
    return est;
}

}  // namespace adlex
