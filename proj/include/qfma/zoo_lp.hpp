#pragma once

// L_p = { a^i : p divides i }. A uniform quantum branch over two-state
// rotation components; component k advances by angle 2*pi*k/p per letter,
// so members return to the cosine axis with probability one.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qfma/builders.hpp"
#include "qfma/wellformed.hpp"

namespace qfma::zoo {

// Per-letter operator: a true plane rotation assembled from two of the
// printed 2x2 reflections.
inline Matrix plane_rotation(double theta) {
    return rot2(theta, 0.0, 0.0) * rot2(0.0, 0.0, 0.0);
}

inline Qfma build_lp_qfa(int p, const std::vector<int>& ks) {
    if (p < 2) throw std::invalid_argument("build_lp_qfa: p must be >= 2");
    if (ks.empty()) throw std::invalid_argument("build_lp_qfa: empty k set");
    for (int k : ks)
        if (k % p == 0)
            throw std::invalid_argument("build_lp_qfa: k = " + std::to_string(k) +
                                        " is divisible by p");

    const int d = static_cast<int>(ks.size());
    const MoveMask R = move_right_on(0);
    SimpleAssembler asmr(1, TapeAlphabet("a"));

    const std::uint32_t branch = asmr.add_state("branch", R);
    std::vector<std::uint32_t> sources{branch};
    for (int i = 1; i < d; ++i) sources.push_back(asmr.add_state("pad" + std::to_string(i), R));

    std::vector<std::uint32_t> cos_states, sin_states, accs, rejs;
    for (int k : ks) {
        const std::string suffix = std::to_string(k);
        cos_states.push_back(asmr.add_state("c" + suffix, R));
        sin_states.push_back(asmr.add_state("s" + suffix, R));
        accs.push_back(asmr.add_state("acc" + suffix, R, StateKind::Accepting));
        rejs.push_back(asmr.add_state("rej" + suffix, R, StateKind::Rejecting));
    }

    const TapeAlphabet alph("a");
    const std::uint64_t sig_kappa = alph.kappa_index();
    const std::uint64_t sig_a = 0;
    const std::uint64_t sig_dollar = alph.dollar_index();

    asmr.block(sig_kappa, sources, cos_states, fourier(d));
    for (int i = 0; i < d; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(ks[i]) / p;
        asmr.block(sig_a, {cos_states[i], sin_states[i]}, {cos_states[i], sin_states[i]},
                   plane_rotation(theta));
        asmr.perm_edge_sigma(cos_states[i], sig_dollar, accs[i]);
        asmr.perm_edge_sigma(sin_states[i], sig_dollar, rejs[i]);
    }
    return from_simple(asmr.assemble(branch));
}

// Acceptance probability of the construction on a^i, evaluated directly.
inline double lp_accept_probability(int p, const std::vector<int>& ks, long i) {
    double total = 0.0;
    for (int k : ks) {
        const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) *
                                  static_cast<double>(i % p) / p);
        total += c * c;
    }
    return total / static_cast<double>(ks.size());
}

struct LpSearchResult {
    bool found = false;
    std::vector<int> ks;
    double worst_accept = 1.0;
    long sets_examined = 0;
    std::string note;
};

// Worst acceptance over nonmember residues for a candidate k set.
inline double lp_worst_nonmember(int p, const std::vector<int>& ks) {
    double worst = 0.0;
    for (long i = 1; i < p; ++i) worst = std::max(worst, lp_accept_probability(p, ks, i));
    return worst;
}

// Searches for a k set of size <= d with worst nonmember acceptance at or
// below the threshold. cos^2 is symmetric under k -> p-k, so candidates
// are drawn from 1..(p-1)/2; exhaustive for small p, seeded sampling
// beyond a budget.
inline LpSearchResult search_lp_kset(int p, int d, double threshold) {
    if (d < 1) throw std::invalid_argument("search_lp_kset: d must be >= 1");
    LpSearchResult res;
    const int half = std::max(1, (p - 1) / 2);
    std::vector<int> pool;
    for (int k = 1; k <= half; ++k) pool.push_back(k);

    const long budget = 2000000;
    // exhaustive by size, lexicographic
    std::vector<int> idx;
    for (int size = 1; size <= std::min<int>(d, pool.size()); ++size) {
        idx.assign(size, 0);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            if (++res.sets_examined > budget) break;
            std::vector<int> ks(size);
            for (int i = 0; i < size; ++i) ks[i] = pool[idx[i]];
            const double worst = lp_worst_nonmember(p, ks);
            if (worst <= threshold) {
                res.found = true;
                res.ks = ks;
                res.worst_accept = worst;
                return res;
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (res.sets_examined > budget) break;
    }
    if (res.sets_examined > budget) {
        // seeded random fallback for large p
        std::mt19937_64 rng(20260810);
        for (int trial = 0; trial < 20000; ++trial) {
            std::vector<int> ks;
            std::uniform_int_distribution<int> pick(1, half);
            for (int i = 0; i < d; ++i) ks.push_back(pick(rng));
            std::sort(ks.begin(), ks.end());
            ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
            const double worst = lp_worst_nonmember(p, ks);
            ++res.sets_examined;
            if (worst <= threshold) {
                res.found = true;
                res.ks = ks;
                res.worst_accept = worst;
                res.note = "sampled";
                return res;
            }
        }
        res.note = "budget exhausted (exhaustive prefix plus 20000 samples)";
    } else {
        res.note = "exhausted all subsets of {1..(p-1)/2} up to size " + std::to_string(d);
    }
    return res;
}

} // namespace qfma::zoo
