#pragma once

// The modular pacing comparator family: member r reads n+1 symbols of the
// first compared segment per r symbols of the target word, memorizes the
// remainder mod n+1 at the separator, then paces the second segment at
// n+1 symbols per n+1-r. It accepts exactly when nonnegative u, v exist
// with  x_i - (n+1)u = x_j - (n+1)v = y - ru - (n+1-r)v.
//
// On equal segments every member accepts; on unequal segments at most one
// member can, which is what the team constructions exploit.

#include <string>

#include "qfma/builders.hpp"
#include "qfma/compose.hpp"

namespace qfma::zoo {

struct PacingSpec {
    int t1_segments = 2; // '#'-separated segments on tape 1
    int seg_i = 1;       // compared pair (1-based, seg_i < seg_j)
    int seg_j = 2;
    int t2_segments = 1; // segments on tape 2
    int seg_k = 1;       // target segment on tape 2
    int n = 2;           // team size; pacing cycle is n+1
    int r = 1;           // member index, 1..n
};

inline ClassicalAutomaton build_pacing_comparator(const PacingSpec& sp) {
    if (sp.n < 1 || sp.r < 1 || sp.r > sp.n)
        throw std::invalid_argument("pacing: need 1 <= r <= n");
    if (sp.seg_i < 1 || sp.seg_i >= sp.seg_j || sp.seg_j > sp.t1_segments)
        throw std::invalid_argument("pacing: bad segment pair");
    if (sp.seg_k < 1 || sp.seg_k > sp.t2_segments)
        throw std::invalid_argument("pacing: bad target segment");

    const int n = sp.n, r = sp.r;
    const char end1 = (sp.seg_j < sp.t1_segments) ? kSeparator : kRightEnd;
    const char end2 = (sp.seg_k < sp.t2_segments) ? kSeparator : kRightEnd;
    const std::string end1s(1, end1);
    const std::string end2s(1, end2);

    const MoveMask R1 = move_right_on(0), R2 = move_right_on(1);
    ReversibleBuilder b(2, TapeAlphabet("a#"));

    const std::uint32_t start = b.add_state("start", kStayAll);

    // Tape-1 pre-skips for segments before seg_i, then the tape-2 left
    // endmarker, then tape-2 pre-skips for segments before seg_k.
    std::uint32_t cursor = start;
    std::string cls1 = "^"; // symbol consumed by the next tape-1 step
    for (int s = 1; s < sp.seg_i; ++s) {
        std::uint32_t sk = b.add_state("skip1." + std::to_string(s), R1);
        b.edge(cursor, SigmaClass::of({cls1.c_str(), ""}), sk);
        b.edge(sk, SigmaClass::of({"a", ""}), sk);
        cursor = sk;
        cls1 = "#";
    }
    const std::uint32_t v = b.add_state("v", R1);
    b.edge(cursor, SigmaClass::of({cls1.c_str(), ""}), v);

    cursor = v;
    std::string cls2 = "^";
    for (int s = 1; s < sp.seg_k; ++s) {
        std::uint32_t sk = b.add_state("skip2." + std::to_string(s), R2);
        b.edge(cursor, SigmaClass::of({"", cls2.c_str()}), sk);
        b.edge(sk, SigmaClass::of({"", "a"}), sk);
        cursor = sk;
        cls2 = "#";
    }

    // Phase-1 ring: n+1 segment reads then r target reads per cycle.
    std::vector<std::uint32_t> a1(n + 1), y1(r);
    a1[0] = b.add_state("p1.x0", R2);
    for (int t = 1; t <= n; ++t) a1[t] = b.add_state("p1.x" + std::to_string(t), R1);
    for (int t = 0; t < r; ++t) y1[t] = b.add_state("p1.y" + std::to_string(t + 1), t == 0 ? R1 : R2);

    b.edge(cursor, SigmaClass::of({"", cls2.c_str()}), a1[0]);
    for (int t = 0; t < n; ++t) b.edge(a1[t], SigmaClass::of({"a", ""}), a1[t + 1]);
    b.edge(a1[n], SigmaClass::of({"a", ""}), y1[0]);
    for (int t = 0; t < r; ++t) {
        std::uint32_t next = (t + 1 < r) ? y1[t + 1] : a1[0];
        b.edge(y1[t], SigmaClass::of({"a#", "a"}), next);
        b.edge(y1[t], SigmaClass::of({"a#", "#$"}), b.reject_for(y1[t]));
    }

    // Phase-2 rings, one per memorized remainder, entered one position in
    // (the entry consumed the separator, not a segment symbol, so the
    // standing count is position minus one).
    std::vector<std::vector<std::uint32_t>> a2(n + 1), y2(n + 1);
    std::vector<std::uint32_t> tail_entry(n + 1);
    for (int a = 0; a <= n; ++a) {
        a2[a].resize(n + 1);
        y2[a].resize(n + 1 - r);
        const std::string pa = "p2." + std::to_string(a) + ".";
        a2[a][0] = b.add_state(pa + "x0", R2);
        for (int t = 1; t <= n; ++t) a2[a][t] = b.add_state(pa + "x" + std::to_string(t), R1);
        for (int t = 0; t < n + 1 - r; ++t)
            y2[a][t] = b.add_state(pa + "y" + std::to_string(t + 1), t == 0 ? R1 : R2);

        // entry path from the phase-1 separator exit, through mid skips
        std::uint32_t from = a1[a];
        std::string cls = "#";
        for (int s = sp.seg_i + 1; s < sp.seg_j; ++s) {
            std::uint32_t sk = b.add_state(pa + "skip." + std::to_string(s), R1);
            b.edge(from, SigmaClass::of({cls.c_str(), ""}), sk);
            b.edge(sk, SigmaClass::of({"a", ""}), sk);
            from = sk;
            cls = "#";
        }
        b.edge(from, SigmaClass::of({cls.c_str(), ""}), a2[a][1]);

        for (int t = 1; t < n; ++t) b.edge(a2[a][t], SigmaClass::of({"a", ""}), a2[a][t + 1]);
        b.edge(a2[a][n], SigmaClass::of({"a", ""}), y2[a][0]);
        b.edge(a2[a][0], SigmaClass::of({"a", ""}), a2[a][1 % (n + 1)] == a2[a][0] ? a2[a][0] : a2[a][1]);

        for (int t = 0; t < n + 1 - r; ++t) {
            std::uint32_t next = (t + 1 < n + 1 - r) ? y2[a][t + 1] : a2[a][0];
            b.edge(y2[a][t], SigmaClass::of({"a", "a"}), next);
            b.edge(y2[a][t], SigmaClass::of({"a", "#$"}), b.reject_for(y2[a][t]));
        }

        // tail: the memorized remainder many target symbols, then end2.
        std::vector<std::uint32_t> tail(a + 1);
        for (int c = a; c >= 0; --c)
            tail[c] = b.add_state("tail." + std::to_string(a) + "." + std::to_string(c),
                                  c == a ? kStayAll : R2);
        tail_entry[a] = tail[a];
        for (int c = a; c >= 1; --c) {
            b.edge(tail[c], SigmaClass::of({"", "a"}), tail[c - 1]);
            b.edge(tail[c], SigmaClass::of({"", "#$"}), b.reject_for(tail[c]));
        }
        const std::uint32_t acc = b.add_state("acc." + std::to_string(a), kStayAll,
                                              StateKind::Accepting);
        b.edge(tail[0], SigmaClass::of({"", end2s.c_str()}), acc);
        b.edge(tail[0], SigmaClass::of({"", "a"}), b.reject_for(tail[0]));
        if (end2 != kSeparator)
            b.edge(tail[0], SigmaClass::of({"", "#"}), b.reject_for(tail[0]));
    }

    // Segment-exhaustion exits from phase-2: standing count is t-1, so the
    // remainder matches when t = a+1; the first target-read slot catches
    // the remainder-n case before its block runs.
    for (int a = 0; a <= n; ++a) {
        for (int t = 1; t <= n; ++t) {
            if (t - 1 == a)
                b.edge(a2[a][t], SigmaClass::of({end1s.c_str(), ""}), tail_entry[a]);
            else
                b.edge(a2[a][t], SigmaClass::of({end1s.c_str(), ""}), b.reject_for(a2[a][t]));
        }
        if (a == n)
            b.edge(y2[a][0], SigmaClass::of({end1s.c_str(), ""}), tail_entry[a]);
        else
            b.edge(y2[a][0], SigmaClass::of({end1s.c_str(), ""}), b.reject_for(y2[a][0]));
        b.edge(a2[a][0], SigmaClass::of({end1s.c_str(), ""}), b.reject_for(a2[a][0]));
    }

    return b.build(start, Variant::Reversible);
}

// Lemma LD1 team for L1 = { (x1 # x2, y) : x1 = x2 = y }.
inline Team build_l1_team(int n) {
    if (n < 2) throw std::invalid_argument("build_l1_team: n must be >= 2");
    Team team;
    team.mm = 1;
    team.nn = n;
    for (int r = 1; r <= n; ++r) {
        PacingSpec sp;
        sp.t1_segments = 2;
        sp.seg_i = 1;
        sp.seg_j = 2;
        sp.t2_segments = 1;
        sp.seg_k = 1;
        sp.n = n;
        sp.r = r;
        team.members.push_back(build_pacing_comparator(sp));
    }
    return team;
}

inline ClassicalAutomaton build_l1_pfa(int n) { return lq1_compose(build_l1_team(n)); }

inline Qfma build_l1_qfma(int n) { return lq2_compose(build_l1_team(n)); }

} // namespace qfma::zoo
