#pragma once

// Team composition: a uniform random branch over n deterministic members
// plus an immediate-reject branch, realized probabilistically (LQ1 shape)
// or as a quantum branch through a Fourier transition block (LQ2 shape).

#include <string>
#include <vector>

#include "qfma/builders.hpp"
#include "qfma/wellformed.hpp"

namespace qfma {

// Probabilistic composition: the initial symbol vector (both heads on the
// left endmarkers) branches uniformly over the members and one rejecting
// sink, with stay moves so each member starts fresh.
inline ClassicalAutomaton lq1_compose(const Team& team) {
    team.validate();
    const int n = team.nn;
    const ClassicalAutomaton& first = team.members[0];

    ClassicalAutomaton a;
    a.variant = Variant::Probabilistic;
    a.m = first.m;
    a.alphabet = first.alphabet;
    a.states.push_back("branch");
    a.kind.push_back(StateKind::NonHalting);
    a.initial = 0;

    std::vector<std::uint32_t> starts;
    for (int rsub = 0; rsub < n; ++rsub) {
        const ClassicalAutomaton& mem = team.members[rsub];
        const std::uint32_t base = static_cast<std::uint32_t>(a.states.size());
        for (std::uint32_t q = 0; q < mem.num_states(); ++q) {
            a.states.push_back("r" + std::to_string(rsub + 1) + "." + mem.states[q]);
            a.kind.push_back(mem.kind[q]);
        }
        starts.push_back(base + mem.initial);
        for (const auto& [key, list] : mem.delta) {
            const std::uint32_t q1 = static_cast<std::uint32_t>(key / mem.num_sigma());
            auto& out = a.delta[a.key(base + q1, key % mem.num_sigma())];
            for (const auto& t : list) out.push_back({base + t.to, t.moves, t.prob});
        }
    }
    const std::uint32_t rej0 = static_cast<std::uint32_t>(a.states.size());
    a.states.push_back("reject0");
    a.kind.push_back(StateKind::Rejecting);

    std::vector<std::size_t> kappas(a.m, a.alphabet.kappa_index());
    const std::uint64_t sigma0 = a.sigma_code(kappas);
    auto& branch = a.delta[a.key(0, sigma0)];
    const double p = 1.0 / static_cast<double>(n + 1);
    for (int rsub = 0; rsub < n; ++rsub) branch.push_back({starts[rsub], kStayAll, p});
    branch.push_back({rej0, kStayAll, p});

    a.validate_structure();
    return a;
}

// Quantum composition: requires reversible members. The initial branch is
// the first column of fourier(n+1) (all amplitudes 1/sqrt(n+1)); branch r
// hands over to member r as a permutation sub-automaton and branch n+1
// enters a rejecting state, where measurement is immediate.
inline Qfma lq2_compose(const Team& team, double tol = kUnitaryTol) {
    team.validate();
    const int n = team.nn;
    const ClassicalAutomaton& first = team.members[0];

    for (int i = 0; i < n; ++i) {
        auto rev = check_reversible(team.members[i]);
        if (!rev.reversible)
            throw std::invalid_argument("lq2_compose: member " + std::to_string(i + 1) +
                                        " is not reversible: " + rev.witnesses[0]);
        // The branch hands over with stay moves, so a member start state
        // re-entered with a moving edge cannot host the branch target.
        for (const auto& [key, list] : team.members[i].delta)
            for (const auto& t : list)
                if (t.to == team.members[i].initial && t.moves != kStayAll)
                    throw std::invalid_argument("lq2_compose: member " + std::to_string(i + 1) +
                                                " re-enters its start state with a moving edge");
    }

    SimpleAssembler asmr(first.m, first.alphabet);
    const std::uint32_t branch = asmr.add_state("branch", kStayAll);
    std::vector<std::uint32_t> block_sources{branch};
    for (int i = 1; i <= n; ++i)
        block_sources.push_back(asmr.add_state("pad" + std::to_string(i), kStayAll));

    std::vector<std::uint32_t> block_targets;
    for (int i = 0; i < n; ++i) {
        auto map = asmr.import_machine(team.members[i], "r" + std::to_string(i + 1) + ".");
        block_targets.push_back(map[team.members[i].initial]);
    }
    block_targets.push_back(asmr.add_state("reject0", kStayAll, StateKind::Rejecting));

    asmr.block(kappa_sigma(first.alphabet, first.m), block_sources, block_targets,
               fourier(static_cast<std::size_t>(n) + 1));

    return from_simple(asmr.assemble(branch), tol);
}

} // namespace qfma
