#pragma once

// Assembly helpers for constructing automata tables.
//
// Reversible deterministic machines are built under two structural
// invariants that make them embeddable in unitary dynamics: per symbol
// vector the state map is injective, and every state is entered with a
// single move vector (its in-move). The quantum assembler extends such
// machines with explicit unitary blocks and completes every per-symbol
// map to a permutation.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qfma/classical.hpp"

namespace qfma {

// Per-tape symbol restriction; an empty string means "any symbol".
struct SigmaClass {
    std::vector<std::string> per_tape;

    static SigmaClass of(std::initializer_list<const char*> tapes) {
        SigmaClass sc;
        for (const char* t : tapes) sc.per_tape.emplace_back(t);
        return sc;
    }

    std::vector<std::uint64_t> expand(const TapeAlphabet& alph, int m) const {
        if (static_cast<int>(per_tape.size()) != m)
            throw std::invalid_argument("sigma class arity mismatch");
        std::vector<std::vector<std::size_t>> choices(m);
        for (int i = 0; i < m; ++i) {
            if (per_tape[i].empty())
                for (std::size_t s = 0; s < alph.gamma_size(); ++s) choices[i].push_back(s);
            else
                for (char c : per_tape[i]) choices[i].push_back(alph.symbol_index(c));
        }
        std::vector<std::uint64_t> codes;
        std::vector<std::size_t> idx(m, 0);
        while (true) {
            std::uint64_t code = 0;
            for (int i = m - 1; i >= 0; --i)
                code = code * alph.gamma_size() + choices[i][idx[i]];
            codes.push_back(code);
            int i = 0;
            for (; i < m; ++i) {
                if (++idx[i] < choices[i].size()) break;
                idx[i] = 0;
            }
            if (i == m) break;
        }
        return codes;
    }
};

// Builder for reversible deterministic machines. Moves live on target
// states: an edge into q always uses in_move(q).
class ReversibleBuilder {
public:
    ReversibleBuilder(int m, TapeAlphabet alphabet) : m_(m), alphabet_(std::move(alphabet)) {}

    std::uint32_t add_state(const std::string& name, MoveMask in_move,
                            StateKind kind = StateKind::NonHalting) {
        states_.push_back(name);
        in_moves_.push_back(in_move);
        kinds_.push_back(kind);
        return static_cast<std::uint32_t>(states_.size() - 1);
    }

    // A per-source rejecting sink, created on first use.
    std::uint32_t reject_for(std::uint32_t src) {
        auto it = rejects_.find(src);
        if (it != rejects_.end()) return it->second;
        std::uint32_t r = add_state("rej." + states_[src], kStayAll, StateKind::Rejecting);
        rejects_[src] = r;
        return r;
    }

    void edge(std::uint32_t from, const SigmaClass& sc, std::uint32_t to) {
        for (std::uint64_t sigma : sc.expand(alphabet_, m_)) edge_sigma(from, sigma, to);
    }

    void edge_sigma(std::uint32_t from, std::uint64_t sigma, std::uint32_t to) {
        auto [sit, snew] = sources_.try_emplace(sigma * kSlots + from, to);
        if (!snew)
            throw std::logic_error("builder: duplicate transition from " + states_[from] +
                                   " on sigma " + std::to_string(sigma));
        auto [tit, tnew] = targets_.try_emplace(sigma * kSlots + to, from);
        if (!tnew)
            throw std::logic_error("builder: target " + states_[to] + " on sigma " +
                                   std::to_string(sigma) + " already reached from " +
                                   states_[tit->second] + " (irreversible merge)");
    }

    void reject_edge(std::uint32_t from, const SigmaClass& sc) { edge(from, sc, reject_for(from)); }

    MoveMask in_move(std::uint32_t q) const { return in_moves_[q]; }

    ClassicalAutomaton build(std::uint32_t initial, Variant variant = Variant::Reversible) const {
        ClassicalAutomaton a;
        a.variant = variant;
        a.m = m_;
        a.alphabet = alphabet_;
        a.states = states_;
        a.initial = initial;
        a.kind = kinds_;
        for (const auto& [key, to] : sources_) {
            const std::uint64_t sigma = key / kSlots;
            const std::uint32_t from = static_cast<std::uint32_t>(key % kSlots);
            a.delta[a.key(from, sigma)].push_back({to, in_moves_[to], 1.0});
        }
        a.validate_structure();
        return a;
    }

private:
    static constexpr std::uint64_t kSlots = 1u << 24;
    int m_;
    TapeAlphabet alphabet_;
    std::vector<std::string> states_;
    std::vector<MoveMask> in_moves_;
    std::vector<StateKind> kinds_;
    std::map<std::uint64_t, std::uint32_t> sources_; // (sigma, from) -> to
    std::map<std::uint64_t, std::uint32_t> targets_; // (sigma, to) -> from
    std::map<std::uint32_t, std::uint32_t> rejects_;
};

// Builder for probabilistic machines; moves are per edge and no
// reversibility discipline applies.
class PfaBuilder {
public:
    PfaBuilder(int m, TapeAlphabet alphabet) : m_(m), alphabet_(std::move(alphabet)) {}

    std::uint32_t add_state(const std::string& name, StateKind kind = StateKind::NonHalting) {
        states_.push_back(name);
        kinds_.push_back(kind);
        return static_cast<std::uint32_t>(states_.size() - 1);
    }

    void edge(std::uint32_t from, const SigmaClass& sc, std::uint32_t to, MoveMask moves,
              double prob = 1.0) {
        for (std::uint64_t sigma : sc.expand(alphabet_, m_))
            table_[{from, sigma}].push_back({to, moves, prob});
    }

    ClassicalAutomaton build(std::uint32_t initial) const {
        ClassicalAutomaton a;
        a.variant = Variant::Probabilistic;
        a.m = m_;
        a.alphabet = alphabet_;
        a.states = states_;
        a.initial = initial;
        a.kind = kinds_;
        for (const auto& [key, list] : table_) {
            auto& out = a.delta[a.key(key.first, key.second)];
            out.insert(out.end(), list.begin(), list.end());
        }
        a.validate_structure();
        return a;
    }

private:
    int m_;
    TapeAlphabet alphabet_;
    std::vector<std::string> states_;
    std::vector<StateKind> kinds_;
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::vector<ClassicalTransition>> table_;
};

// Assembles a simple QFMA from reversible machine parts plus explicit
// unitary blocks, then completes every V_sigma to a full permutation on
// the untouched states.
class SimpleAssembler {
public:
    SimpleAssembler(int m, TapeAlphabet alphabet) : m_(m), alphabet_(std::move(alphabet)) {
        std::uint64_t n = 1;
        for (int i = 0; i < m_; ++i) n *= alphabet_.gamma_size();
        num_sigma_ = n;
        perm_.resize(n);
        used_source_.resize(n);
        used_target_.resize(n);
        blocks_.resize(n);
    }

    std::uint32_t add_state(const std::string& name, MoveMask head_move,
                            StateKind kind = StateKind::NonHalting) {
        states_.push_back(name);
        moves_.push_back(head_move);
        kinds_.push_back(kind);
        return static_cast<std::uint32_t>(states_.size() - 1);
    }

    // Imports a reversible deterministic machine, deriving the per-state
    // head schedule from edge moves. Returns old-index -> new-index map.
    std::vector<std::uint32_t> import_machine(const ClassicalAutomaton& a,
                                              const std::string& prefix) {
        if (a.variant == Variant::Probabilistic)
            throw std::invalid_argument("import_machine: probabilistic member");
        if (a.m != m_ || !(a.alphabet == alphabet_))
            throw std::invalid_argument("import_machine: member disagrees on tapes or alphabet");
        auto rev = check_reversible(a);
        if (!rev.reversible)
            throw std::invalid_argument("import_machine: member not reversible: " +
                                        rev.witnesses[0]);
        // Derive in-moves; states never entered default to stay-everywhere.
        std::vector<MoveMask> dmove(a.num_states(), kStayAll);
        std::vector<bool> seen(a.num_states(), false);
        for (const auto& [key, list] : a.delta)
            for (const auto& t : list) {
                if (seen[t.to] && dmove[t.to] != t.moves)
                    throw std::invalid_argument(
                        "import_machine: state " + a.states[t.to] +
                        " entered with two different move vectors; not embeddable in a "
                        "simple table");
                dmove[t.to] = t.moves;
                seen[t.to] = true;
            }
        std::vector<std::uint32_t> map(a.num_states());
        for (std::uint32_t q = 0; q < a.num_states(); ++q)
            map[q] = add_state(prefix + a.states[q], dmove[q], a.kind[q]);
        const std::uint64_t ns = a.num_sigma();
        for (const auto& [key, list] : a.delta) {
            const std::uint32_t q1 = static_cast<std::uint32_t>(key / ns);
            for (const auto& t : list) perm_edge_sigma(map[q1], key % ns, map[t.to]);
        }
        return map;
    }

    void perm_edge_sigma(std::uint32_t from, std::uint64_t sigma, std::uint32_t to) {
        claim_source(sigma, from);
        claim_target(sigma, to);
        perm_[sigma].push_back({from, to});
    }

    void perm_edge(std::uint32_t from, const SigmaClass& sc, std::uint32_t to) {
        for (std::uint64_t sigma : sc.expand(alphabet_, m_)) perm_edge_sigma(from, sigma, to);
    }

    // Unitary block for one concrete sigma: u(r, c) is the amplitude from
    // sources[c] into targets[r].
    void block(std::uint64_t sigma, const std::vector<std::uint32_t>& sources,
               const std::vector<std::uint32_t>& targets, const Matrix& u) {
        if (u.rows() != targets.size() || u.cols() != sources.size() ||
            sources.size() != targets.size())
            throw std::invalid_argument("block: dimension mismatch");
        if (!is_unitary(u, 1e-9))
            throw std::invalid_argument("block: matrix is not unitary");
        for (std::uint32_t s : sources) claim_source(sigma, s);
        for (std::uint32_t t : targets) claim_target(sigma, t);
        blocks_[sigma].push_back({sources, targets, u});
    }

    SimpleQfma assemble(std::uint32_t initial) const {
        SimpleQfma s;
        s.m = m_;
        s.alphabet = alphabet_;
        s.states = states_;
        s.initial = initial;
        s.kind = kinds_;
        s.head_schedule = moves_;
        s.columns.assign(num_sigma_, {});
        const std::uint32_t n = static_cast<std::uint32_t>(states_.size());
        for (std::uint64_t sigma = 0; sigma < num_sigma_; ++sigma) {
            auto& cols = s.columns[sigma];
            cols.assign(n, {});
            for (const auto& [from, to] : perm_[sigma]) cols[from].push_back({to, Complex{1.0, 0.0}});
            for (const auto& blk : blocks_[sigma])
                for (std::size_t c = 0; c < blk.sources.size(); ++c)
                    for (std::size_t r = 0; r < blk.targets.size(); ++r) {
                        const Complex amp = blk.u(r, c);
                        if (std::abs(amp) > 0.0) cols[blk.sources[c]].push_back({blk.targets[r], amp});
                    }
            // Complete to a permutation: pair untouched sources with
            // untouched targets in index order.
            std::vector<std::uint32_t> free_targets;
            const auto& ut = used_target_[sigma];
            const auto& us = used_source_[sigma];
            for (std::uint32_t q = 0; q < n; ++q)
                if (ut.find(q) == ut.end()) free_targets.push_back(q);
            std::size_t next = 0;
            for (std::uint32_t q = 0; q < n; ++q) {
                if (us.find(q) != us.end()) continue;
                cols[q].push_back({free_targets[next++], Complex{1.0, 0.0}});
            }
        }
        return s;
    }

private:
    struct Block {
        std::vector<std::uint32_t> sources, targets;
        Matrix u;
    };

    void claim_source(std::uint64_t sigma, std::uint32_t q) {
        if (!used_source_[sigma].insert(q).second)
            throw std::logic_error("assembler: state " + states_[q] +
                                   " already has a column for sigma " + std::to_string(sigma));
    }
    void claim_target(std::uint64_t sigma, std::uint32_t q) {
        if (!used_target_[sigma].insert(q).second)
            throw std::logic_error("assembler: state " + states_[q] +
                                   " already targeted for sigma " + std::to_string(sigma));
    }

    int m_;
    TapeAlphabet alphabet_;
    std::uint64_t num_sigma_ = 0;
    std::vector<std::string> states_;
    std::vector<MoveMask> moves_;
    std::vector<StateKind> kinds_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> perm_;
    std::vector<std::unordered_set<std::uint32_t>> used_source_, used_target_;
    std::vector<std::vector<Block>> blocks_;
};

} // namespace qfma
