#pragma once

// Dense evolution operator U_x over the configuration basis, for
// verification at small sizes. Tapes are circular: the successor of the
// right endmarker position is the left endmarker.

#include <string>
#include <vector>

#include "qfma/automaton.hpp"

namespace qfma {

constexpr std::size_t kDenseConfigCap = 4096;

struct TapeSet {
    // tape contents as symbol indices including endmarkers: ^ x $
    std::vector<std::vector<std::size_t>> cells;

    TapeSet(const Qfma& a, const std::vector<std::string>& input) {
        if (static_cast<int>(input.size()) != a.m)
            throw std::invalid_argument("input word count does not match tape count");
        cells.resize(a.m);
        for (int i = 0; i < a.m; ++i) {
            cells[i].reserve(input[i].size() + 2);
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

// Configuration coding: mixed radix over (state, positions...).
inline std::uint64_t config_code(const TapeSet& tapes, std::uint32_t q,
                                 const std::vector<std::size_t>& pos) {
    std::uint64_t code = q;
    for (std::size_t i = 0; i < pos.size(); ++i) code = code * tapes.size(i) + pos[i];
    return code;
}

inline void config_decode(const TapeSet& tapes, std::uint64_t code, int m, std::uint32_t& q,
                          std::vector<std::size_t>& pos) {
    pos.resize(m);
    for (int i = m - 1; i >= 0; --i) {
        pos[i] = code % tapes.size(i);
        code /= tapes.size(i);
    }
    q = static_cast<std::uint32_t>(code);
}

inline Matrix evolution_operator(const Qfma& a, const std::vector<std::string>& input,
                                 std::size_t cap = kDenseConfigCap) {
    a.validate_structure();
    TapeSet tapes(a, input);
    const std::size_t nconf = a.num_states() * tapes.total_positions();
    if (nconf > cap)
        throw std::length_error("evolution_operator: " + std::to_string(nconf) +
                                " configurations exceed the dense cap of " + std::to_string(cap));
    Matrix u(nconf, nconf);
    std::vector<std::size_t> pos(a.m, 0), npos(a.m);
    std::uint32_t q1 = 0;
    for (std::uint64_t col = 0; col < nconf; ++col) {
        config_decode(tapes, col, a.m, q1, pos);
        std::vector<std::size_t> syms(a.m);
        for (int i = 0; i < a.m; ++i) syms[i] = tapes.cells[i][pos[i]];
        auto it = a.delta.find(a.key(q1, a.sigma_code(syms)));
        if (it == a.delta.end()) continue;
        for (const Transition& t : it->second) {
            for (int i = 0; i < a.m; ++i)
                npos[i] = moves_right(t.moves, i) ? (pos[i] + 1) % tapes.size(i) : pos[i];
            u(config_code(tapes, t.to, npos), col) += t.amp;
        }
    }
    return u;
}

} // namespace qfma
