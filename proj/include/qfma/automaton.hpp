#pragma once

// The quantum finite multitape automaton model: tape alphabet with
// endmarkers, move vectors, flat amplitude transition tables, and the
// simple-automaton form (per-symbol unitary + per-state head schedule).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfma/linalg.hpp"

namespace qfma {

constexpr char kLeftEnd = '^';
constexpr char kRightEnd = '$';
constexpr char kSeparator = '#';

// Input alphabet in stable order, with the endmarkers appended to form
// the working alphabet Gamma.
class TapeAlphabet {
public:
    TapeAlphabet() = default;
    explicit TapeAlphabet(std::string input_symbols) : sigma_(std::move(input_symbols)) {
        for (char c : sigma_)
            if (c == kLeftEnd || c == kRightEnd)
                throw std::invalid_argument("alphabet: endmarkers cannot be input symbols");
    }

    std::size_t sigma_size() const { return sigma_.size(); }
    std::size_t gamma_size() const { return sigma_.size() + 2; }
    const std::string& input_symbols() const { return sigma_; }

    std::size_t kappa_index() const { return sigma_.size(); }
    std::size_t dollar_index() const { return sigma_.size() + 1; }

    char symbol_char(std::size_t idx) const {
        if (idx < sigma_.size()) return sigma_[idx];
        if (idx == kappa_index()) return kLeftEnd;
        if (idx == dollar_index()) return kRightEnd;
        throw std::out_of_range("alphabet: bad symbol index");
    }

    std::size_t symbol_index(char c) const {
        if (c == kLeftEnd) return kappa_index();
        if (c == kRightEnd) return dollar_index();
        auto pos = sigma_.find(c);
        if (pos == std::string::npos)
            throw std::invalid_argument(std::string("alphabet: unknown symbol '") + c + "'");
        return pos;
    }

    bool operator==(const TapeAlphabet& o) const { return sigma_ == o.sigma_; }

private:
    std::string sigma_;
};

// Move vector over m tapes packed as a bitmask; a set bit means the head
// on that tape moves right, a clear bit means it stays.
using MoveMask = std::uint8_t;
constexpr MoveMask kStayAll = 0;

inline MoveMask move_right_on(int tape) { return static_cast<MoveMask>(1u << tape); }
inline bool moves_right(MoveMask d, int tape) { return (d >> tape) & 1u; }

enum class StateKind : std::uint8_t { NonHalting = 0, Accepting = 1, Rejecting = 2 };

inline std::uint64_t pack_sigma(const TapeAlphabet& alph, int m,
                                const std::vector<std::size_t>& syms) {
    std::uint64_t code = 0;
    for (int i = m - 1; i >= 0; --i) code = code * alph.gamma_size() + syms[i];
    return code;
}

inline std::uint64_t kappa_sigma(const TapeAlphabet& alph, int m) {
    return pack_sigma(alph, m, std::vector<std::size_t>(m, alph.kappa_index()));
}

struct Transition {
    std::uint32_t to;
    MoveMask moves;
    Complex amp;
};

// Flat-table QFMA. Transition keys combine source state and the observed
// symbol vector; sigma codes are mixed-radix over Gamma.
struct Qfma {
    int m = 1;
    TapeAlphabet alphabet;
    std::vector<std::string> states;
    std::uint32_t initial = 0;
    std::vector<StateKind> kind;
    std::unordered_map<std::uint64_t, std::vector<Transition>> delta;

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
    std::vector<std::size_t> sigma_symbols(std::uint64_t code) const {
        std::vector<std::size_t> syms(m);
        for (int i = 0; i < m; ++i) {
            syms[i] = code % alphabet.gamma_size();
            code /= alphabet.gamma_size();
        }
        return syms;
    }
    std::string sigma_string(std::uint64_t code) const {
        auto syms = sigma_symbols(code);
        std::string s;
        for (int i = 0; i < m; ++i) {
            if (i) s += ',';
            s += alphabet.symbol_char(syms[i]);
        }
        return s;
    }

    bool is_halting(std::uint32_t q) const { return kind[q] != StateKind::NonHalting; }

    void validate_structure() const {
        if (m < 1) throw std::invalid_argument("qfma: tape count must be >= 1");
        if (states.empty()) throw std::invalid_argument("qfma: no states");
        if (kind.size() != states.size()) throw std::invalid_argument("qfma: kind table size mismatch");
        if (initial >= states.size()) throw std::invalid_argument("qfma: bad initial state");
    }
};

// Simple QFMA: per symbol-vector a unitary V_sigma on the state space and
// a head schedule D assigning each state the move used to enter it.
// Columns are stored sparsely; v_sigma_dense materializes small matrices.
struct SimpleQfma {
    int m = 1;
    TapeAlphabet alphabet;
    std::vector<std::string> states;
    std::uint32_t initial = 0;
    std::vector<StateKind> kind;
    std::vector<MoveMask> head_schedule;
    // columns[sigma][q1] = sparse column of V_sigma (pairs of target state, amplitude)
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, Complex>>>> columns;

    std::size_t num_states() const { return states.size(); }
    std::uint64_t num_sigma() const {
        std::uint64_t n = 1;
        for (int i = 0; i < m; ++i) n *= alphabet.gamma_size();
        return n;
    }

    Matrix v_sigma_dense(std::uint64_t sigma) const {
        const std::size_t n = num_states();
        Matrix v(n, n);
        for (std::size_t q1 = 0; q1 < n; ++q1)
            for (const auto& [q, amp] : columns[sigma][q1])
                v(q, q1) = amp;
        return v;
    }
};

// Sparse unitarity check of one V_sigma: unit columns and pairwise
// orthogonality via row grouping.
inline double simple_column_residual(const SimpleQfma& s, std::uint64_t sigma) {
    const auto& cols = s.columns[sigma];
    double worst = 0.0;
    std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, Complex>>> rows;
    for (std::uint32_t q1 = 0; q1 < cols.size(); ++q1) {
        double norm2 = 0.0;
        for (const auto& [q, amp] : cols[q1]) {
            norm2 += std::norm(amp);
            rows[q].push_back({q1, amp});
        }
        worst = std::max(worst, std::abs(norm2 - 1.0));
    }
    std::unordered_map<std::uint64_t, Complex> gram;
    for (const auto& [q, sources] : rows)
        for (std::size_t i = 0; i < sources.size(); ++i)
            for (std::size_t j = 0; j < sources.size(); ++j) {
                if (sources[i].first == sources[j].first) continue;
                gram[(std::uint64_t)sources[i].first << 32 | sources[j].first] +=
                    std::conj(sources[i].second) * sources[j].second;
            }
    for (const auto& [k, v] : gram) worst = std::max(worst, std::abs(v));
    return worst;
}

// Compiles a simple QFMA to the flat table:
// delta(q1, sigma, q, d) = <q|V_sigma|q1> when D(q) = d, else 0.
inline Qfma from_simple(const SimpleQfma& s, double tol = kUnitaryTol) {
    for (std::uint64_t sigma = 0; sigma < s.num_sigma(); ++sigma) {
        double r = simple_column_residual(s, sigma);
        if (r > tol) {
            Qfma probe;
            probe.m = s.m;
            probe.alphabet = s.alphabet;
            throw std::invalid_argument("from_simple: V_sigma not unitary for sigma=(" +
                                        probe.sigma_string(sigma) + "), residual " +
                                        std::to_string(r));
        }
    }
    Qfma a;
    a.m = s.m;
    a.alphabet = s.alphabet;
    a.states = s.states;
    a.initial = s.initial;
    a.kind = s.kind;
    for (std::uint64_t sigma = 0; sigma < s.num_sigma(); ++sigma)
        for (std::uint32_t q1 = 0; q1 < s.num_states(); ++q1) {
            const auto& col = s.columns[sigma][q1];
            if (col.empty()) continue;
            auto& list = a.delta[a.key(q1, sigma)];
            for (const auto& [q, amp] : col)
                list.push_back({q, s.head_schedule[q], amp});
        }
    a.validate_structure();
    return a;
}

} // namespace qfma
