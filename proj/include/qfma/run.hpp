#pragma once

// Run semantics: exact sparse state-vector evolution with per-step
// measurement against the accepting/rejecting/non-halting subspaces, a
// seeded trajectory sampler, and the single-tape 1-way runner.

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfma/automaton.hpp"
#include "qfma/evolution.hpp"

namespace qfma {

struct RunResult {
    double p_accept = 0.0;
    double p_reject = 0.0;
    double p_residual = 0.0;
    long steps = 0;
};

constexpr double kResidualTol = 1e-12;

inline long default_max_steps(const Qfma& a, const TapeSet& tapes) {
    return 4L * static_cast<long>(a.num_states()) * static_cast<long>(tapes.total_positions());
}

namespace detail {

using Wave = std::unordered_map<std::uint64_t, Complex>;

inline double wave_norm2(const Wave& w) {
    double n = 0.0;
    for (const auto& [c, amp] : w) n += std::norm(amp);
    return n;
}

// Removes halting-state amplitude from the wave, accumulating its squared
// norm into the acceptance and rejection tallies.
inline void measure(const Qfma& a, const TapeSet& tapes, Wave& w, double& p_acc, double& p_rej) {
    const std::size_t posn = tapes.total_positions();
    for (auto it = w.begin(); it != w.end();) {
        const std::uint32_t q = static_cast<std::uint32_t>(it->first / posn);
        if (a.kind[q] == StateKind::NonHalting) {
            ++it;
            continue;
        }
        const double mass = std::norm(it->second);
        if (a.kind[q] == StateKind::Accepting)
            p_acc += mass;
        else
            p_rej += mass;
        it = w.erase(it);
    }
}

inline Wave apply_step(const Qfma& a, const TapeSet& tapes, const Wave& w) {
    Wave next;
    next.reserve(w.size() * 2);
    std::vector<std::size_t> pos(a.m), npos(a.m), syms(a.m);
    std::uint32_t q1;
    for (const auto& [code, amp] : w) {
        config_decode(tapes, code, a.m, q1, pos);
        for (int i = 0; i < a.m; ++i) syms[i] = tapes.cells[i][pos[i]];
        auto it = a.delta.find(a.key(q1, a.sigma_code(syms)));
        if (it == a.delta.end())
            throw std::runtime_error("run: no transition from state " + a.states[q1] +
                                     " on sigma (" + a.sigma_string(a.sigma_code(syms)) + ")");
        for (const Transition& t : it->second) {
            for (int i = 0; i < a.m; ++i)
                npos[i] = moves_right(t.moves, i) ? (pos[i] + 1) % tapes.size(i) : pos[i];
            next[config_code(tapes, t.to, npos)] += amp * t.amp;
        }
    }
    return next;
}

} // namespace detail

// Exact run: starts in |initial, (0,...,0)>, measures the initial
// superposition, then alternates evolution and measurement until the
// non-halted mass drops below residual_tol or max_steps is reached.
inline RunResult run_exact(const Qfma& a, const std::vector<std::string>& input,
                           long max_steps = -1, double residual_tol = kResidualTol) {
    a.validate_structure();
    TapeSet tapes(a, input);
    if (max_steps < 0) max_steps = default_max_steps(a, tapes);

    detail::Wave w;
    w[config_code(tapes, a.initial, std::vector<std::size_t>(a.m, 0))] = Complex{1.0, 0.0};
    RunResult r;
    detail::measure(a, tapes, w, r.p_accept, r.p_reject);
    double residual = detail::wave_norm2(w);
    while (r.steps < max_steps && residual >= residual_tol && !w.empty()) {
        w = detail::apply_step(a, tapes, w);
        detail::measure(a, tapes, w, r.p_accept, r.p_reject);
        residual = detail::wave_norm2(w);
        ++r.steps;
    }
    r.p_residual = residual;
    return r;
}

// Seeded trajectory sampling: at each measurement the wave collapses to
// accept, reject, or the renormalized non-halting projection with the
// corresponding probabilities. Deterministic for a fixed seed.
inline RunResult run_sampled(const Qfma& a, const std::vector<std::string>& input, long trials,
                             std::uint64_t seed, long max_steps = -1) {
    a.validate_structure();
    if (trials < 1) throw std::invalid_argument("run_sampled: trials must be >= 1");
    TapeSet tapes(a, input);
    if (max_steps < 0) max_steps = default_max_steps(a, tapes);

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    long n_acc = 0, n_rej = 0, n_res = 0, max_halt_steps = 0;
    for (long trial = 0; trial < trials; ++trial) {
        detail::Wave w;
        w[config_code(tapes, a.initial, std::vector<std::size_t>(a.m, 0))] = Complex{1.0, 0.0};
        long steps = 0;
        int outcome = -1;
        while (true) {
            // measure: split mass into accept / reject / continue
            double m_acc = 0.0, m_rej = 0.0;
            detail::Wave non;
            for (const auto& [code, amp] : w) {
                const std::uint32_t q = static_cast<std::uint32_t>(code / tapes.total_positions());
                if (a.kind[q] == StateKind::Accepting)
                    m_acc += std::norm(amp);
                else if (a.kind[q] == StateKind::Rejecting)
                    m_rej += std::norm(amp);
                else
                    non[code] = amp;
            }
            const double m_non = detail::wave_norm2(non);
            const double total = m_acc + m_rej + m_non;
            const double u = uniform() * total;
            if (u < m_acc) {
                outcome = 0;
                break;
            }
            if (u < m_acc + m_rej) {
                outcome = 1;
                break;
            }
            if (m_non <= 0.0) {
                outcome = 2;
                break;
            }
            if (steps >= max_steps) {
                outcome = 2;
                break;
            }
            const double scale = 1.0 / std::sqrt(m_non);
            for (auto& [code, amp] : non) amp *= scale;
            w = detail::apply_step(a, tapes, non);
            ++steps;
        }
        if (outcome == 0)
            ++n_acc;
        else if (outcome == 1)
            ++n_rej;
        else
            ++n_res;
        max_halt_steps = std::max(max_halt_steps, steps);
    }
    RunResult r;
    r.p_accept = static_cast<double>(n_acc) / static_cast<double>(trials);
    r.p_reject = static_cast<double>(n_rej) / static_cast<double>(trials);
    r.p_residual = static_cast<double>(n_res) / static_cast<double>(trials);
    r.steps = max_halt_steps;
    return r;
}

// 1-way single-tape runner: processes exactly ^ input $ (length+2 steps),
// measuring after each letter. Requires m = 1 and right-moving
// transitions throughout.
inline RunResult run_qfa_1way(const Qfma& a, const std::string& input) {
    a.validate_structure();
    if (a.m != 1)
        throw std::invalid_argument("run_qfa_1way: automaton is not single-tape");
    for (const auto& [key, list] : a.delta)
        for (const Transition& t : list)
            if (t.moves != move_right_on(0))
                throw std::invalid_argument(
                    "run_qfa_1way: transition with a stay move from state " +
                    a.states[key / a.num_sigma()]);
    return run_exact(a, {input}, static_cast<long>(input.size()) + 2, 0.0);
}

} // namespace qfma
