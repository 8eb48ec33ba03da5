/**
 * Two-party, two-input, two-output behaviors p(ab|xy): generation from a
 * joint state and local binary measurements, no-signalling and locality
 * checks, CHSH evaluation over all relabellings, and PR box detection.
 */

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "gptbox/tensor.hpp"

namespace gptbox {

/// Conditional probability table, indexed p[x][y][a][b]. All entries exact.
struct Behavior {
    std::array<std::array<std::array<std::array<Rational, 2>, 2>, 2>, 2> p{};

    Rational& at(int x, int y, int a, int b) {
        return p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]
                [static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    const Rational& at(int x, int y, int a, int b) const {
        return p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]
                [static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    bool normalized() const {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                Rational sum = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const Rational& v = at(x, y, a, b);
                        if (v < 0 || v > 1) return false;
                        sum += v;
                    }
                if (sum != 1) return false;
            }
        return true;
    }
};

/**
 * Behavior of a joint state under one pair of binary measurements per party:
 * p(ab|xy) = (f_{a|x} (x) g_{b|y}) applied to the state.
 */
inline Behavior behavior_from(const RVec& joint_state,
                              const std::array<Measurement, 2>& alice,
                              const std::array<Measurement, 2>& bob) {
    for (const auto& m : alice)
        if (m.outcomes.size() != 2) throw std::invalid_argument("behavior_from: binary measurements required");
    for (const auto& m : bob)
        if (m.outcomes.size() != 2) throw std::invalid_argument("behavior_from: binary measurements required");
    const Index da = alice[0].outcomes[0].size();
    const Index db = bob[0].outcomes[0].size();
    if (joint_state.size() != da * db)
        throw std::invalid_argument("behavior_from: state/effect dimension mismatch");
    Behavior beh;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    beh.at(x, y, a, b) =
                        kron(alice[static_cast<std::size_t>(x)].outcomes[static_cast<std::size_t>(a)],
                             bob[static_cast<std::size_t>(y)].outcomes[static_cast<std::size_t>(b)])
                            .dot(joint_state);
    return beh;
}

/// No-signalling check; on failure reports one violating marginal.
struct NoSignallingResult {
    bool holds = true;
    std::string violation;  ///< e.g. "alice marginal a=0 x=0 depends on y" when !holds
};

inline NoSignallingResult check_no_signalling(const Behavior& beh) {
    NoSignallingResult res;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            Rational m0 = beh.at(x, 0, a, 0) + beh.at(x, 0, a, 1);
            Rational m1 = beh.at(x, 1, a, 0) + beh.at(x, 1, a, 1);
            if (m0 != m1) {
                res.holds = false;
                res.violation = "alice marginal p(a=" + std::to_string(a) +
                                "|x=" + std::to_string(x) + ") depends on y";
                return res;
            }
        }
    for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) {
            Rational m0 = beh.at(0, y, 0, b) + beh.at(0, y, 1, b);
            Rational m1 = beh.at(1, y, 0, b) + beh.at(1, y, 1, b);
            if (m0 != m1) {
                res.holds = false;
                res.violation = "bob marginal p(b=" + std::to_string(b) +
                                "|y=" + std::to_string(y) + ") depends on x";
                return res;
            }
        }
    return res;
}

/// Correlator C_xy = sum_ab (-1)^(a xor b) p(ab|xy).
inline Rational correlator(const Behavior& beh, int x, int y) {
    return beh.at(x, y, 0, 0) - beh.at(x, y, 0, 1) - beh.at(x, y, 1, 0) + beh.at(x, y, 1, 1);
}

/**
 * Maximal CHSH value over the 8 relabelled variants: the minus sign on any
 * of the four correlators, times a global sign. Outcome and measurement
 * relabellings of the behavior are absorbed by this family.
 */
struct ChshResult {
    Rational value;
    int minus_position = 3;  ///< which correlator (xy as 2x+y) carries the minus sign
    int global_sign = +1;
};

inline ChshResult chsh_value(const Behavior& beh) {
    std::array<Rational, 4> c;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) c[static_cast<std::size_t>(2 * x + y)] = correlator(beh, x, y);
    const Rational total = c[0] + c[1] + c[2] + c[3];
    ChshResult best;
    best.value = -1;
    for (int pos = 0; pos < 4; ++pos) {
        const Rational s = total - 2 * c[static_cast<std::size_t>(pos)];
        for (int sign : {+1, -1}) {
            const Rational v = sign * s;
            if (v > best.value) {
                best.value = v;
                best.minus_position = pos;
                best.global_sign = sign;
            }
        }
    }
    return best;
}

/**
 * Locality test for no-signalling behaviors via the CHSH family: in the
 * 2-input/2-output setting a no-signalling behavior is local iff every
 * relabelled CHSH expression is at most 2.
 */
inline bool is_local(const Behavior& beh) {
    if (!check_no_signalling(beh).holds)
        throw std::invalid_argument("is_local: behavior is signalling; CHSH characterization "
                                    "applies to no-signalling behaviors only");
    return chsh_value(beh).value <= 2;
}

/// The PR box family: p(ab|xy) = 1/2 when a xor b = xy xor (alpha x) xor (beta y) xor gamma.
inline Behavior pr_box(int alpha = 0, int beta = 0, int gamma = 0) {
    Behavior beh;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int target = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma;
                    beh.at(x, y, a, b) = (a ^ b) == target ? Rational(1, 2) : Rational(0);
                }
    return beh;
}

/// Exact match against the 8 PR box variants.
struct PrBoxResult {
    bool is_pr = false;
    int alpha = 0, beta = 0, gamma = 0;
};

inline PrBoxResult is_pr_box(const Behavior& beh) {
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma) {
                const Behavior ref = pr_box(alpha, beta, gamma);
                bool same = true;
                for (int x = 0; x < 2 && same; ++x)
                    for (int y = 0; y < 2 && same; ++y)
                        for (int a = 0; a < 2 && same; ++a)
                            for (int b = 0; b < 2 && same; ++b)
                                if (beh.at(x, y, a, b) != ref.at(x, y, a, b)) same = false;
                if (same) return PrBoxResult{true, alpha, beta, gamma};
            }
    return PrBoxResult{};
}

/// The 16 deterministic local behaviors p(ab|xy) = [a = f(x)][b = g(y)].
inline std::vector<Behavior> deterministic_behaviors() {
    std::vector<Behavior> out;
    for (int fa0 = 0; fa0 < 2; ++fa0)
        for (int fa1 = 0; fa1 < 2; ++fa1)
            for (int fb0 = 0; fb0 < 2; ++fb0)
                for (int fb1 = 0; fb1 < 2; ++fb1) {
                    Behavior beh;
                    for (int x = 0; x < 2; ++x)
                        for (int y = 0; y < 2; ++y) {
                            const int a = x ? fa1 : fa0;
                            const int b = y ? fb1 : fb0;
                            beh.at(x, y, a, b) = 1;
                        }
                    out.push_back(beh);
                }
    return out;
}

}  // namespace gptbox
