/**
 * Exact rational linear algebra on top of Eigen.
 *
 * Eigen's FullPivLU is exact over the rational scalar (pivoting compares
 * exact magnitudes, the default threshold degenerates to "pivot != 0"),
 * so rank / kernel / solve / inverse need no custom elimination code.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <vector>

#include "gptbox/rational.hpp"

namespace gptbox {

using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

/// Build a vector from an initializer list of rationals.
inline RVec rvec(std::initializer_list<Rational> entries) {
    RVec v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (const auto& e : entries) v(i++) = e;
    return v;
}

/// Stack a list of row vectors into a matrix. An empty list gives a 0 x dim matrix.
inline RMat stack_rows(const std::vector<RVec>& rows, Index dim) {
    RMat m(static_cast<Index>(rows.size()), dim);
    for (Index i = 0; i < m.rows(); ++i) m.row(i) = rows[static_cast<std::size_t>(i)].transpose();
    return m;
}

inline Index rank(const RMat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return Eigen::FullPivLU<RMat>(m).rank();
}

/// Basis of the null space {x : m x = 0}, one column per basis vector.
inline RMat kernel_basis(const RMat& m) {
    if (m.rows() == 0) return RMat::Identity(m.cols(), m.cols());
    Eigen::FullPivLU<RMat> lu(m);
    if (lu.rank() == m.cols()) return RMat(m.cols(), 0);
    return lu.kernel();
}

/// One exact solution of A x = b, or nullopt when the system is inconsistent.
inline std::optional<RVec> solve_linear(const RMat& a, const RVec& b) {
    if (a.rows() == 0) return RVec::Zero(a.cols());
    Eigen::FullPivLU<RMat> lu(a);
    RVec x = lu.solve(b);
    if (a * x == b) return x;
    return std::nullopt;
}

/**
 * Scale a nonzero rational vector by the unique positive factor giving
 * coprime integer entries. The direction is preserved: this is the canonical
 * representative of a ray, not of a line.
 */
inline RVec canonical_scale(const RVec& v) {
    BigInt den_lcm = 1;
    for (Index i = 0; i < v.size(); ++i)
        den_lcm = lcm(den_lcm, denominator(v(i)));
    BigInt num_gcd = 0;
    for (Index i = 0; i < v.size(); ++i)
        num_gcd = gcd(num_gcd, BigInt(numerator(v(i)) * (den_lcm / denominator(v(i)))));
    if (num_gcd == 0) return RVec::Zero(v.size());
    const Rational factor{den_lcm, num_gcd};
    RVec out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = v(i) * factor;
    return out;
}

/// Exact lexicographic comparison, used as the canonical ordering everywhere.
inline bool lex_less(const RVec& a, const RVec& b) {
    const Index n = std::min(a.size(), b.size());
    for (Index i = 0; i < n; ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return a.size() < b.size();
}

/// Sort vectors lexicographically and drop exact duplicates.
inline void sort_unique(std::vector<RVec>& vs) {
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end(), [](const RVec& a, const RVec& b) { return a == b; }),
             vs.end());
}

/// Indices of a maximal set of linearly independent rows, chosen greedily
/// in row order (deterministic).
inline std::vector<Index> independent_rows(const RMat& m) {
    std::vector<Index> picked;
    RMat acc(0, m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
        RMat trial(acc.rows() + 1, m.cols());
        trial << acc, m.row(i);
        if (rank(trial) == trial.rows()) {
            acc = std::move(trial);
            picked.push_back(i);
            if (acc.rows() == m.cols()) break;
        }
    }
    return picked;
}

}  // namespace gptbox
