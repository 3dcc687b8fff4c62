#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "knotlat/matrix.hpp"
#include "knotlat/normal_form.hpp"

namespace knotlat {

struct NotPositiveDefiniteError : std::runtime_error {
    NotPositiveDefiniteError() : std::runtime_error("lattice pairing is not positive definite") {}
};

// A finitely generated free abelian group with an integral symmetric form.
// When `basis` is present it realizes the lattice inside Euclidean Z^n
// (rows = basis vectors) and gram = basis * basis^T.
struct IntegerLattice {
    IMat gram;
    std::optional<IMat> basis;

    static IntegerLattice from_gram(IMat g) {
        if (!g.is_symmetric()) throw std::invalid_argument("gram matrix must be symmetric");
        return IntegerLattice{std::move(g), std::nullopt};
    }

    static IntegerLattice from_basis(IMat b) {
        IMat g = b * b.transpose();
        return IntegerLattice{std::move(g), std::move(b)};
    }

    std::size_t lattice_rank() const { return gram.rows(); }
    std::size_t ambient_dim() const { return basis ? basis->cols() : gram.rows(); }
    Int discriminant() const { return det(gram); }
};

struct DiscriminantGroup {
    std::vector<Int> factors;  // invariant factors > 1, divisibility order
    Int order;                 // |det gram|
};

inline DiscriminantGroup discriminant_group(const IntegerLattice& l) {
    Int d = det(l.gram);
    if (d == 0) throw std::invalid_argument("degenerate lattice has no discriminant group");
    return DiscriminantGroup{invariant_factors(l.gram), abs_int(d)};
}

struct Inertia {
    std::size_t pos = 0, neg = 0, zero = 0;
};

// Exact inertia of a symmetric rational matrix: symmetric elimination with
// hyperbolic 2x2 pivots when the whole diagonal block vanishes.
inline Inertia signature(QMat m) {
    if (!m.is_symmetric()) throw std::invalid_argument("signature of non-symmetric matrix");
    std::size_t n = m.rows();
    Inertia sig;
    std::vector<bool> done(n, false);
    std::size_t handled = 0;
    while (handled < n) {
        // prefer a nonzero diagonal pivot
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && m(i, i) != Rat(0)) {
                p = i;
                break;
            }
        if (p < n) {
            Rat piv = m(p, p);
            if (piv > Rat(0))
                ++sig.pos;
            else
                ++sig.neg;
            std::vector<Rat> prow(n, Rat(0));
            for (std::size_t j = 0; j < n; ++j) prow[j] = m(p, j);
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i] || i == p || prow[i] == Rat(0)) continue;
                Rat f = prow[i] / piv;
                for (std::size_t j = 0; j < n; ++j) {
                    if (done[j] || j == p) continue;
                    m(i, j) -= f * prow[j];
                }
                m(i, p) = Rat(0);
                m(p, i) = Rat(0);
            }
            done[p] = true;
            ++handled;
            continue;
        }
        // all remaining diagonal entries vanish: look for an off-diagonal pair
        std::size_t a = n, b = n;
        for (std::size_t i = 0; i < n && a == n; ++i) {
            if (done[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (!done[j] && m(i, j) != Rat(0)) {
                    a = i;
                    b = j;
                    break;
                }
        }
        if (a == n) {  // remaining block is zero
            for (std::size_t i = 0; i < n; ++i)
                if (!done[i]) {
                    done[i] = true;
                    ++sig.zero;
                    ++handled;
                }
            break;
        }
        // hyperbolic block [[0, c], [c, 0]] contributes (+1, -1); splitting it
        // off replaces the residual block by
        //   m'(i,j) = m(i,j) - (m(i,a) m(b,j) + m(i,b) m(a,j)) / c.
        Rat c = m(a, b);
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && i != a && i != b) rest.push_back(i);
        QMat orig = m;
        for (std::size_t i : rest)
            for (std::size_t j : rest)
                m(i, j) = orig(i, j) - (orig(i, a) * orig(b, j) + orig(i, b) * orig(a, j)) / c;
        for (std::size_t i : rest) {
            m(i, a) = m(a, i) = Rat(0);
            m(i, b) = m(b, i) = Rat(0);
        }
        ++sig.pos;
        ++sig.neg;
        done[a] = done[b] = true;
        handled += 2;
    }
    return sig;
}

inline Inertia signature(const IMat& m) { return signature(to_rational(m)); }

// signature as a single integer n+ - n-
inline long signature_index(const IMat& m) {
    Inertia s = signature(m);
    return long(s.pos) - long(s.neg);
}

inline bool is_positive_definite(const IMat& m) {
    Inertia s = signature(m);
    return s.neg == 0 && s.zero == 0;
}

// All nonzero x with x^T M x <= bound, up to global sign (first nonzero entry positive),
// in lexicographic order. M must be positive definite.
inline std::vector<std::pair<std::vector<Int>, Int>> short_vectors(const IMat& m, const Int& bound) {
    if (!is_positive_definite(m)) throw NotPositiveDefiniteError();
    std::size_t n = m.rows();
    // rational Cholesky: M = L D L^T with unit lower-triangular L
    QMat q = to_rational(m);
    QMat l = QMat::identity(n);
    std::vector<Rat> d(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat s = q(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k) * d[k];
        d[j] = s;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rat t = q(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k) * d[k];
            l(i, j) = t / d[j];
        }
    }
    // Q(x) = sum_j d[j] * (x_j + sum_{i>j} l(i,j) x_i)^2, enumerate from the last coordinate.
    std::vector<std::pair<std::vector<Int>, Int>> out;
    std::vector<Int> x(n, 0);
    Rat qbound = rat(bound);

    auto rec = [&](auto&& self, std::size_t level, Rat remaining) -> void {
        // level counts down; coordinates x[level..n-1] are fixed
        if (level == 0) {
            Int norm = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) norm += x[i] * m(i, j) * x[j];
            bool zero = true;
            for (const auto& v : x)zero = zero && v == 0;
            if (!zero && norm <= bound) out.emplace_back(x, norm);
            return;
        }
        std::size_t j = level - 1;
        Rat center(0);
        for (std::size_t i = j + 1; i < n; ++i) center += l(i, j) * rat(x[i]);
        // d[j]*(x_j + center)^2 <= remaining
        Rat radius2 = remaining / d[j];
        // |x_j + center| <= sqrt(radius2): bound x_j by integer window
        // find largest integer w with w^2 <= radius2
        Int num = radius2.numerator(), den = radius2.denominator();
        Int prod = num * den;
        Int w = isqrt(prod) / den + 1;
        Int lo = floor_rat(-center - Rat(w, 1));
        Int hi = floor_rat(-center + Rat(w, 1)) + 1;
        for (Int v = lo; v <= hi; ++v) {
            Rat term = rat(v) + center;
            Rat used = d[j] * term * term;
            if (used > remaining) continue;
            x[j] = v;
            self(self, j, remaining - used);
        }
        x[j] = 0;
    };
    rec(rec, n, qbound);

    // keep one representative per +-pair: first nonzero coordinate positive
    std::vector<std::pair<std::vector<Int>, Int>> half;
    for (auto& p : out) {
        const auto& v = p.first;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            if (v[i] > 0) half.push_back(p);
            break;
        }
    }
    std::sort(half.begin(), half.end());
    return half;
}

// multiset of norms of short vectors up to bound (each +-pair counted once)
inline std::vector<Int> norm_spectrum(const IMat& m, const Int& bound) {
    std::vector<Int> norms;
    for (const auto& p : short_vectors(m, bound)) norms.push_back(p.second);
    std::sort(norms.begin(), norms.end());
    return norms;
}

namespace detail {

// Backtracking search for P with P^T M1 P = M2 (both positive definite).
// Candidate images are drawn from short vectors of M1; returns the first
// hit in lexicographic candidate order, preferring det +1.
inline std::optional<IMat> pd_witness_search(const IMat& m1, const IMat& m2) {
    std::size_t r = m1.rows();
    Int maxdiag = 0;
    for (std::size_t i = 0; i < r; ++i) maxdiag = std::max(maxdiag, m2(i, i));
    auto shorts = short_vectors(m1, maxdiag);
    // both signs are candidates
    std::vector<std::vector<Int>> cand;
    for (const auto& p : shorts) {
        cand.push_back(p.first);
        std::vector<Int> neg = p.first;
        for (auto& v : neg) v = -v;
        cand.push_back(neg);
    }
    std::sort(cand.begin(), cand.end());
    std::vector<Int> norms(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
        Int nn = 0;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) nn += cand[i][a] * m1(a, b) * cand[i][b];
        norms[i] = nn;
    }

    std::vector<std::vector<Int>> chosen;
    std::optional<IMat> fallback;  // det -1 witness, kept if no det +1 found

    auto pair_with = [&](const std::vector<Int>& u, const std::vector<Int>& v) {
        Int s = 0;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) s += u[a] * m1(a, b) * v[b];
        return s;
    };

    auto rec = [&](auto&& self, std::size_t j) -> bool {
        if (j == r) {
            IMat p(r, r);
            for (std::size_t col = 0; col < r; ++col)
                for (std::size_t row = 0; row < r; ++row) p(row, col) = chosen[col][row];
            Int dp = det(p);
            if (dp == 1) {
                fallback = p;
                return true;
            }
            if (dp == -1 && !fallback) fallback = p;
            return false;
        }
        for (std::size_t ci = 0; ci < cand.size(); ++ci) {
            if (norms[ci] != m2(j, j)) continue;
            bool ok = true;
            for (std::size_t k = 0; k < j && ok; ++k)
                ok = pair_with(chosen[k], cand[ci]) == m2(k, j);
            if (!ok) continue;
            chosen.push_back(cand[ci]);
            if (self(self, j + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    rec(rec, 0);
    return fallback;
}

}  // namespace detail

struct IsometryResult {
    bool isometric = false;
    std::optional<IMat> witness;  // P with P^T M1 P = M2; det +1 preferred
};

// Decision procedure for positive definite Gram matrices. Complete: the search
// space (vectors of bounded norm) always contains every possible basis image.
inline IsometryResult pd_isometric(const IntegerLattice& l1, const IntegerLattice& l2) {
    const IMat& m1 = l1.gram;
    const IMat& m2 = l2.gram;
    if (!is_positive_definite(m1) || !is_positive_definite(m2)) throw NotPositiveDefiniteError();
    if (m1.rows() != m2.rows()) return {};
    if (m1.rows() == 0) return {true, IMat(0, 0)};
    if (det(m1) != det(m2)) return {};
    Int bound = 0;
    for (std::size_t i = 0; i < m1.rows(); ++i)
        bound = std::max(bound, std::max(m1(i, i), m2(i, i)));
    if (norm_spectrum(m1, bound) != norm_spectrum(m2, bound)) return {};
    auto w = detail::pd_witness_search(m1, m2);
    if (!w) return {};
    return {true, w};
}

enum class CongruenceVerdict { Yes, No, Unknown };

struct CongruenceResult {
    CongruenceVerdict verdict;
    std::optional<IMat> witness;
    std::string reason;  // separating invariant for No, or note for Unknown
};

// Unimodular congruence of symmetric integer matrices. Positive (or negative)
// definite pairs are decided exactly; indefinite pairs are separated by
// invariants or searched within a budget.
inline CongruenceResult unimodular_congruent(const IMat& m, const IMat& n, unsigned budget = 1000) {
    if (m.rows() != n.rows())
        return {CongruenceVerdict::No, std::nullopt, "rank"};
    if (m.rows() == 0) return {CongruenceVerdict::Yes, IMat(0, 0), ""};
    if (det(m) != det(n)) return {CongruenceVerdict::No, std::nullopt, "determinant"};
    Inertia sm = signature(m), sn = signature(n);
    if (sm.pos != sn.pos || sm.neg != sn.neg || sm.zero != sn.zero)
        return {CongruenceVerdict::No, std::nullopt, "signature"};
    auto even = [](const IMat& a) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a(i, i) % 2 != 0) return false;
        return true;
    };
    if (even(m) != even(n)) return {CongruenceVerdict::No, std::nullopt, "parity"};
    if (det(m) != 0 && invariant_factors(m) != invariant_factors(n))
        return {CongruenceVerdict::No, std::nullopt, "discriminant group"};

    if (sm.neg == 0 && sm.zero == 0) {
        auto r = pd_isometric(IntegerLattice::from_gram(m), IntegerLattice::from_gram(n));
        if (!r.isometric) return {CongruenceVerdict::No, std::nullopt, "norm spectrum / no isometry"};
        return {CongruenceVerdict::Yes, r.witness, ""};
    }
    if (sm.pos == 0 && sm.zero == 0) {
        auto r = pd_isometric(IntegerLattice::from_gram(-m), IntegerLattice::from_gram(-n));
        if (!r.isometric) return {CongruenceVerdict::No, std::nullopt, "norm spectrum / no isometry"};
        return {CongruenceVerdict::Yes, r.witness, ""};
    }

    // indefinite: bounded deterministic search over small congruences
    std::size_t r = m.rows();
    std::vector<IMat> gens;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            for (int s : {1, -1}) {
                IMat e = IMat::identity(r);
                e(i, j) = s;
                gens.push_back(e);
            }
        }
    std::vector<IMat> frontier{IMat::identity(r)};
    std::map<IMat, bool> seen;
    unsigned steps = 0;
    while (!frontier.empty() && steps < budget) {
        std::vector<IMat> next;
        for (const auto& p : frontier) {
            IMat c = p.transpose() * m * p;
            if (c == n) return {CongruenceVerdict::Yes, p, ""};
            for (const auto& g : gens) {
                if (++steps >= budget) break;
                IMat q = p * g;
                if (seen.count(q)) continue;
                seen[q] = true;
                next.push_back(q);
            }
            if (steps >= budget) break;
        }
        frontier = std::move(next);
    }
    return {CongruenceVerdict::Unknown, std::nullopt, "search budget exhausted"};
}

}  // namespace knotlat
