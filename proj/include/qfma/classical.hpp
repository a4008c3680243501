#pragma once

// Deterministic, reversible, and probabilistic multitape automata on the
// same circular-tape model, plus team recognizability checking.

#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qfma/automaton.hpp"
#include "qfma/evolution.hpp"
#include "qfma/run.hpp"

namespace qfma {

enum class Variant : std::uint8_t { Deterministic, Reversible, Probabilistic };

struct ClassicalTransition {
    std::uint32_t to;
    MoveMask moves;
    double prob;
};

struct ClassicalAutomaton {
    Variant variant = Variant::Deterministic;
    int m = 1;
    TapeAlphabet alphabet;
    std::vector<std::string> states;
    std::uint32_t initial = 0;
    std::vector<StateKind> kind;
    std::unordered_map<std::uint64_t, std::vector<ClassicalTransition>> delta;

    std::size_t num_states() const { return states.size(); }
    std::uint64_t num_sigma() const {
        std::uint64_t n = 1;
        for (int i = 0; i < m; ++i) n *= alphabet.gamma_size();
        return n;
    }
    std::uint64_t key(std::uint32_t q, std::uint64_t sigma) const { return q * num_sigma() + sigma; }

    std::uint64_t sigma_code(const std::vector<std::size_t>& syms) const {
        std::uint64_t code = 0;
        for (int i = m - 1; i >= 0; --i) code = code * alphabet.gamma_size() + syms[i];
        return code;
    }
    std::string sigma_string(std::uint64_t code) const {
        std::string s;
        for (int i = 0; i < m; ++i) {
            if (i) s += ',';
            s += alphabet.symbol_char(code % alphabet.gamma_size());
            code /= alphabet.gamma_size();
        }
        return s;
    }

    void validate_structure() const {
        if (m < 1) throw std::invalid_argument("automaton: tape count must be >= 1");
        if (states.empty()) throw std::invalid_argument("automaton: no states");
        if (initial >= states.size()) throw std::invalid_argument("automaton: bad initial state");
        for (const auto& [key, list] : delta) {
            if (variant == Variant::Probabilistic) {
                double total = 0.0;
                for (const auto& t : list) total += t.prob;
                if (std::abs(total - 1.0) > 1e-12)
                    throw std::invalid_argument("pfa: probabilities for a source sum to " +
                                                std::to_string(total));
            } else if (list.size() != 1 || std::abs(list[0].prob - 1.0) > 1e-12) {
                throw std::invalid_argument("dfa: source must have exactly one unit transition");
            }
        }
    }

    // Adapter used by the compose stage: views the table as a quantum one
    // with real amplitudes (only valid for deterministic variants).
    Qfma as_quantum_view() const;
};

struct ReversibilityReport {
    bool reversible = true;
    std::vector<std::string> witnesses;
};

// A deterministic table is reversible when, per symbol vector, no two
// sources lead to the same target state.
inline ReversibilityReport check_reversible(const ClassicalAutomaton& a) {
    if (a.variant == Variant::Probabilistic)
        throw std::invalid_argument("check_reversible: probabilistic automaton");
    a.validate_structure();
    ReversibilityReport rep;
    const std::uint64_t ns = a.num_sigma();
    // (sigma, target) -> source
    std::unordered_map<std::uint64_t, std::uint32_t> seen;
    for (const auto& [key, list] : a.delta) {
        const std::uint32_t q1 = static_cast<std::uint32_t>(key / ns);
        const std::uint64_t sigma = key % ns;
        for (const auto& t : list) {
            auto [it, inserted] = seen.try_emplace(sigma * a.num_states() + t.to, q1);
            if (!inserted && rep.witnesses.size() < 16) {
                rep.reversible = false;
                rep.witnesses.push_back("target " + a.states[t.to] + " on sigma (" +
                                        a.sigma_string(sigma) + ") reached from both " +
                                        a.states[it->second] + " and " + a.states[q1]);
            }
        }
    }
    return rep;
}

enum class RunOutcome { Accept, Reject, Loop };

struct ClassicalTapeSet {
    std::vector<std::vector<std::size_t>> cells;

    ClassicalTapeSet(const ClassicalAutomaton& a, const std::vector<std::string>& input) {
        if (static_cast<int>(input.size()) != a.m)
            throw std::invalid_argument("input word count does not match tape count");
        cells.resize(a.m);
        for (int i = 0; i < a.m; ++i) {
            cells[i].push_back(a.alphabet.kappa_index());
            for (char c : input[i]) cells[i].push_back(a.alphabet.symbol_index(c));
            cells[i].push_back(a.alphabet.dollar_index());
        }
    }
    std::size_t size(int tape) const { return cells[tape].size(); }
    std::size_t total_positions() const {
        std::size_t p = 1;
        for (const auto& t : cells) p *= t.size();
        return p;
    }
};

// Single-trajectory run; LOOP on configuration revisit or step exhaustion.
inline RunOutcome run_deterministic(const ClassicalAutomaton& a,
                                    const std::vector<std::string>& input, long max_steps = -1) {
    if (a.variant == Variant::Probabilistic)
        throw std::invalid_argument("run_deterministic: probabilistic automaton");
    a.validate_structure();
    ClassicalTapeSet tapes(a, input);
    if (max_steps < 0)
        max_steps = static_cast<long>(a.num_states()) * static_cast<long>(tapes.total_positions()) + 1;

    std::uint32_t q = a.initial;
    std::vector<std::size_t> pos(a.m, 0);
    std::unordered_set<std::uint64_t> visited;
    for (long step = 0; step <= max_steps; ++step) {
        if (a.kind[q] == StateKind::Accepting) return RunOutcome::Accept;
        if (a.kind[q] == StateKind::Rejecting) return RunOutcome::Reject;
        std::uint64_t code = q;
        for (int i = 0; i < a.m; ++i) code = code * tapes.size(i) + pos[i];
        if (!visited.insert(code).second) return RunOutcome::Loop;

        std::vector<std::size_t> syms(a.m);
        for (int i = 0; i < a.m; ++i) syms[i] = tapes.cells[i][pos[i]];
        auto it = a.delta.find(a.key(q, a.sigma_code(syms)));
        if (it == a.delta.end())
            throw std::runtime_error("run_deterministic: no transition from state " + a.states[q] +
                                     " on sigma (" + a.sigma_string(a.sigma_code(syms)) + ")");
        const ClassicalTransition& t = it->second[0];
        for (int i = 0; i < a.m; ++i)
            if (moves_right(t.moves, i)) pos[i] = (pos[i] + 1) % tapes.size(i);
        q = t.to;
    }
    return RunOutcome::Loop;
}

// Exact probabilistic run: propagates a distribution over configurations,
// absorbing mass at halting states.
inline RunResult run_pfa_exact(const ClassicalAutomaton& a, const std::vector<std::string>& input,
                               long max_steps = -1, double residual_tol = kResidualTol) {
    a.validate_structure();
    ClassicalTapeSet tapes(a, input);
    if (max_steps < 0)
        max_steps = 4L * static_cast<long>(a.num_states()) * static_cast<long>(tapes.total_positions());

    const std::size_t posn = tapes.total_positions();
    std::unordered_map<std::uint64_t, double> dist;
    dist[a.initial * posn] = 1.0;
    RunResult r;

    auto absorb = [&](std::unordered_map<std::uint64_t, double>& d) {
        for (auto it = d.begin(); it != d.end();) {
            const std::uint32_t q = static_cast<std::uint32_t>(it->first / posn);
            if (a.kind[q] == StateKind::Accepting) {
                r.p_accept += it->second;
                it = d.erase(it);
            } else if (a.kind[q] == StateKind::Rejecting) {
                r.p_reject += it->second;
                it = d.erase(it);
            } else {
                ++it;
            }
        }
    };

    absorb(dist);
    double residual = 0.0;
    for (const auto& [c, p] : dist) residual += p;
    while (r.steps < max_steps && residual >= residual_tol && !dist.empty()) {
        std::unordered_map<std::uint64_t, double> next;
        next.reserve(dist.size() * 2);
        std::vector<std::size_t> pos(a.m), syms(a.m);
        for (const auto& [code, p] : dist) {
            std::uint64_t rem = code;
            for (int i = a.m - 1; i >= 0; --i) {
                pos[i] = rem % tapes.size(i);
                rem /= tapes.size(i);
            }
            const std::uint32_t q1 = static_cast<std::uint32_t>(rem);
            for (int i = 0; i < a.m; ++i) syms[i] = tapes.cells[i][pos[i]];
            auto it = a.delta.find(a.key(q1, a.sigma_code(syms)));
            if (it == a.delta.end())
                throw std::runtime_error("run_pfa_exact: no transition from state " +
                                         a.states[q1] + " on sigma (" +
                                         a.sigma_string(a.sigma_code(syms)) + ")");
            for (const ClassicalTransition& t : it->second) {
                std::uint64_t ncode = q1;
                ncode = t.to;
                for (int i = 0; i < a.m; ++i) {
                    std::size_t np = moves_right(t.moves, i) ? (pos[i] + 1) % tapes.size(i) : pos[i];
                    ncode = ncode * tapes.size(i) + np;
                }
                next[ncode] += p * t.prob;
            }
        }
        dist = std::move(next);
        absorb(dist);
        residual = 0.0;
        for (const auto& [c, p] : dist) residual += p;
        ++r.steps;
    }
    r.p_residual = residual;
    return r;
}

struct Team {
    std::vector<ClassicalAutomaton> members;
    int mm = 1; // at most this many accept outside the language
    int nn = 0; // team size; all members accept inside the language

    void validate() const {
        if (members.empty()) throw std::invalid_argument("team: no members");
        if (nn != static_cast<int>(members.size()))
            throw std::invalid_argument("team: nn must equal member count");
        if (mm < 0 || mm >= nn) throw std::invalid_argument("team: need 0 <= mm < nn");
        for (const auto& a : members)
            if (a.m != members[0].m || !(a.alphabet == members[0].alphabet))
                throw std::invalid_argument("team: members disagree on tapes or alphabet");
    }
};

struct TeamCheckReport {
    bool ok = true;
    long inputs_checked = 0;
    std::string violation;
};

// Exhaustively verifies [mm,nn]-recognizability over the supplied inputs:
// members of the language accepted by all nn automata, non-members by at
// most mm. A looping member is reported as a violation.
inline TeamCheckReport team_check(const Team& team,
                                  const std::function<bool(const std::vector<std::string>&)>& oracle,
                                  const std::vector<std::vector<std::string>>& grid,
                                  long max_steps = -1) {
    team.validate();
    TeamCheckReport rep;
    for (const auto& input : grid) {
        int accepts = 0;
        for (std::size_t i = 0; i < team.members.size(); ++i) {
            RunOutcome out = run_deterministic(team.members[i], input, max_steps);
            if (out == RunOutcome::Loop) {
                rep.ok = false;
                rep.violation = "member " + std::to_string(i + 1) + " loops on input";
                return rep;
            }
            if (out == RunOutcome::Accept) ++accepts;
        }
        const bool member_of_lang = oracle(input);
        if ((member_of_lang && accepts != team.nn) || (!member_of_lang && accepts > team.mm)) {
            rep.ok = false;
            std::string joined;
            for (std::size_t i = 0; i < input.size(); ++i) {
                if (i) joined += ";";
                joined += input[i];
            }
            rep.violation = "input [" + joined + "] " +
                            (member_of_lang ? "(member)" : "(non-member)") + " accepted by " +
                            std::to_string(accepts) + " of " + std::to_string(team.nn);
            return rep;
        }
        ++rep.inputs_checked;
    }
    return rep;
}

inline Qfma ClassicalAutomaton::as_quantum_view() const {
    if (variant == Variant::Probabilistic)
        throw std::invalid_argument("as_quantum_view: probabilistic table has no amplitude form");
    Qfma q;
    q.m = m;
    q.alphabet = alphabet;
    q.states = states;
    q.initial = initial;
    q.kind = kind;
    for (const auto& [key, list] : delta) {
        auto& out = q.delta[key];
        for (const auto& t : list) out.push_back({t.to, t.moves, Complex{1.0, 0.0}});
    }
    return q;
}

} // namespace qfma
