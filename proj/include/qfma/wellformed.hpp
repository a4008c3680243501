#pragma once

// The three well-formedness conditions on a QFMA transition table:
// local probability, column orthogonality, and separability. A table
// passing all three induces a unitary evolution on every input.

#include <string>
#include <unordered_map>
#include <vector>

#include "qfma/automaton.hpp"

namespace qfma {

struct WellFormedReport {
    bool local_probability = true;
    bool column_orthogonality = true;
    bool separability = true;
    std::vector<std::string> witnesses;

    bool ok() const { return local_probability && column_orthogonality && separability; }
};

namespace detail {

inline void add_witness(WellFormedReport& rep, const std::string& w) {
    if (rep.witnesses.size() < 16) rep.witnesses.push_back(w);
}

// Per-sigma buckets of defined transitions.
struct SigmaIndex {
    // per sigma: list of (q1, transitions*)
    std::vector<std::vector<std::pair<std::uint32_t, const std::vector<Transition>*>>> by_sigma;

    explicit SigmaIndex(const Qfma& a) : by_sigma(a.num_sigma()) {
        const std::uint64_t ns = a.num_sigma();
        for (const auto& [key, list] : a.delta)
            by_sigma[key % ns].push_back({static_cast<std::uint32_t>(key / ns), &list});
    }
};

} // namespace detail

// The local probability condition is checked with squared moduli
// (sum of |amp|^2 = 1 per source and symbol vector): unit squared column
// norms are what unitarity of the evolution operator requires.
inline WellFormedReport check_well_formed(const Qfma& a, double tol = kUnitaryTol) {
    a.validate_structure();
    WellFormedReport rep;
    const std::uint64_t ns = a.num_sigma();
    detail::SigmaIndex index(a);

    // Condition 1: every (q1, sigma) column has squared norm 1.
    for (std::uint32_t q1 = 0; q1 < a.num_states(); ++q1)
        for (std::uint64_t sigma = 0; sigma < ns; ++sigma) {
            double norm2 = 0.0;
            auto it = a.delta.find(a.key(q1, sigma));
            if (it != a.delta.end())
                for (const Transition& t : it->second) norm2 += std::norm(t.amp);
            if (std::abs(norm2 - 1.0) > tol) {
                rep.local_probability = false;
                detail::add_witness(rep, "local_probability: state " + a.states[q1] +
                                             " sigma (" + a.sigma_string(sigma) + ") norm^2 " +
                                             std::to_string(norm2));
            }
        }

    // Condition 2: per sigma, distinct source columns are orthogonal as
    // vectors over (target state, move vector).
    for (std::uint64_t sigma = 0; sigma < ns; ++sigma) {
        std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, Complex>>> rows;
        for (const auto& [q1, list] : index.by_sigma[sigma])
            for (const Transition& t : *list)
                rows[(std::uint64_t)t.to << 8 | t.moves].push_back({q1, t.amp});
        std::unordered_map<std::uint64_t, Complex> gram;
        for (const auto& [rk, sources] : rows) {
            if (sources.size() < 2) continue;
            for (const auto& [qa, va] : sources)
                for (const auto& [qb, vb] : sources) {
                    if (qa == qb) continue;
                    gram[(std::uint64_t)qa << 32 | qb] += std::conj(va) * vb;
                }
        }
        for (const auto& [pair_key, v] : gram)
            if (std::abs(v) > tol) {
                rep.column_orthogonality = false;
                detail::add_witness(rep, "column_orthogonality: states " +
                                             a.states[pair_key >> 32] + "," +
                                             a.states[pair_key & 0xffffffffu] + " sigma (" +
                                             a.sigma_string(sigma) + ") |ip| " +
                                             std::to_string(std::abs(v)));
            }
    }

    // Condition 3: separability over head-movement splits I. For each
    // nonempty I, each pair of symbol vectors agreeing outside I, and each
    // pair of I-restricted move assignments differing on every tape of I,
    // the cross inner products over (target, moves outside I) vanish.
    const int m = a.m;
    for (MoveMask imask = 1; imask < (1u << m); ++imask) {
        // Enumerate t1 over move assignments on I; t2 is forced to differ
        // on every tape of I, i.e. t2 = t1 XOR imask.
        std::vector<MoveMask> t_choices;
        for (MoveMask t = 0; t < (1u << m); ++t)
            if ((t & ~imask) == 0) t_choices.push_back(t);
        for (MoveMask t1 : t_choices) {
            const MoveMask t2 = t1 ^ imask;
            for (std::uint64_t sigma1 = 0; sigma1 < ns; ++sigma1) {
                // sigma2 agrees with sigma1 outside I.
                auto syms1 = a.sigma_symbols(sigma1);
                std::vector<int> free_tapes;
                for (int i = 0; i < m; ++i)
                    if ((imask >> i) & 1) free_tapes.push_back(i);
                // iterate all assignments of symbols to tapes in I
                const std::size_t g = a.alphabet.gamma_size();
                std::vector<std::size_t> counter(free_tapes.size(), 0);
                bool done = false;
                while (!done) {
                    auto syms2 = syms1;
                    for (std::size_t i = 0; i < free_tapes.size(); ++i)
                        syms2[free_tapes[i]] = counter[i];
                    const std::uint64_t sigma2 = a.sigma_code(syms2);

                    // rows: (target, moves restricted outside I)
                    auto collect = [&](std::uint64_t sigma, MoveMask twant,
                                       std::unordered_map<std::uint64_t,
                                                          std::vector<std::pair<std::uint32_t, Complex>>>& rows) {
                        for (const auto& [q1, list] : index.by_sigma[sigma])
                            for (const Transition& t : *list) {
                                if ((t.moves & imask) != twant) continue;
                                rows[(std::uint64_t)t.to << 8 | (t.moves & ~imask)].push_back({q1, t.amp});
                            }
                    };
                    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, Complex>>> rows1, rows2;
                    collect(sigma1, t1, rows1);
                    collect(sigma2, t2, rows2);
                    std::unordered_map<std::uint64_t, Complex> gram;
                    for (const auto& [rk, src1] : rows1) {
                        auto it2 = rows2.find(rk);
                        if (it2 == rows2.end()) continue;
                        for (const auto& [qa, va] : src1)
                            for (const auto& [qb, vb] : it2->second)
                                gram[(std::uint64_t)qa << 32 | qb] += std::conj(va) * vb;
                    }
                    for (const auto& [pair_key, v] : gram)
                        if (std::abs(v) > tol) {
                            rep.separability = false;
                            detail::add_witness(
                                rep, "separability: I=" + std::to_string(imask) + " states " +
                                         a.states[pair_key >> 32] + "," +
                                         a.states[pair_key & 0xffffffffu] + " sigma1 (" +
                                         a.sigma_string(sigma1) + ") sigma2 (" +
                                         a.sigma_string(sigma2) + ") t1=" + std::to_string(t1) +
                                         " |ip| " + std::to_string(std::abs(v)));
                        }

                    // advance counter
                    done = true;
                    for (std::size_t i = 0; i < counter.size(); ++i) {
                        if (++counter[i] < g) {
                            done = false;
                            break;
                        }
                        counter[i] = 0;
                    }
                    if (counter.empty()) done = true;
                }
            }
        }
    }
    return rep;
}

} // namespace qfma
