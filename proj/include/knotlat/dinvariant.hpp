#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotlat/lattice.hpp"
#include "knotlat/matrix.hpp"
#include "knotlat/normal_form.hpp"

namespace knotlat {

struct NotInDualLatticeError : std::runtime_error {
    NotInDualLatticeError() : std::runtime_error("vector does not pair integrally with the lattice") {}
};
struct AmbientTooLargeError : std::runtime_error {
    explicit AmbientTooLargeError(std::size_t n)
        : std::runtime_error("ambient dimension " + std::to_string(n) + " exceeds the enumeration bound") {}
};
struct CosetCountMismatchError : std::runtime_error {
    CosetCountMismatchError()
        : std::runtime_error("internal consistency failure: characteristic coset count != |det gram|") {}
};
struct OrderTooLargeError : std::runtime_error {
    OrderTooLargeError() : std::runtime_error("discriminant group order exceeds the isomorphism search cap") {}
};

// Elements of the dual lattice are stored by their pairing vector
// p_i = <xi, b_i>; this identifies Lambda* with Z^r.
using PairingVec = std::vector<Int>;

// is xi characteristic: <xi, x> = |x| mod 2 for all x, checked on the basis.
// coords are rational coordinates of xi in the basis of Lambda.
inline bool is_characteristic(const IntegerLattice& l, const std::vector<Rat>& coords) {
    std::size_t r = l.lattice_rank();
    if (coords.size() != r) throw std::invalid_argument("coordinate size mismatch");
    for (std::size_t i = 0; i < r; ++i) {
        Rat p(0);
        for (std::size_t j = 0; j < r; ++j) p += rat(l.gram(i, j)) * coords[j];
        if (!is_integer(p)) throw NotInDualLatticeError();
        if (mod2(p - rat(l.gram(i, i))) != Rat(0)) return false;
    }
    return true;
}

// norm |xi|^2 from its pairing vector: p^T M^{-1} p
inline Rat dual_norm(const QMat& gram_inverse, const PairingVec& p) {
    std::size_t r = p.size();
    Rat norm(0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) norm += rat(p[i]) * gram_inverse(i, j) * rat(p[j]);
    return norm;
}

struct CharacteristicCoset {
    PairingVec key;        // canonical residue of the pairing vector mod 2*M*Z^r
    PairingVec rep;        // pairing vector of a minimal-norm representative
    std::vector<Rat> coords;  // the representative in basis coordinates of Lambda (x) Q
    Rat min_norm;
    Rat d;                 // (min_norm - rank)/4
};

class DInvariant {
public:
    IMat gram;
    std::size_t rank = 0;
    Int disc_order = 0;
    std::vector<Int> factors;            // invariant factors > 1
    std::vector<CharacteristicCoset> cosets;  // sorted by key

    // torsor bookkeeping
    IMat hnf2m;   // column HNF of 2*gram
    IMat snf_u;   // from smith_normal_form(gram)
    IMat snf_s;

    const CharacteristicCoset& coset(const PairingVec& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) throw std::logic_error("unknown characteristic coset key");
        return cosets[it->second];
    }
    bool has(const PairingVec& key) const { return index_.count(key) != 0; }

    PairingVec key_of(const PairingVec& p) const { return reduce_mod_columns(p, hnf2m); }

    // the torsor action [xi] + 2*lambda for a discriminant class given by pairing vector q
    PairingVec act(const PairingVec& key, const PairingVec& q) const {
        PairingVec s(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) s[i] = key[i] + 2 * q[i];
        return key_of(s);
    }

    // group element (SNF coordinates, one slot per invariant factor > 1) -> pairing vector rep
    PairingVec group_rep(const std::vector<Int>& tuple) const {
        std::size_t r = rank;
        std::vector<Int> t(r, 0);
        std::size_t k = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (snf_s(i, i) > 1) t[i] = tuple[k++];
        // z with U z = t  =>  z = U^{-1} t; U unimodular so solve exactly
        auto z = solve_integer(snf_u, t);
        if (!z) throw std::logic_error("unimodular solve failed");
        return *z;
    }

    std::vector<Rat> d_multiset() const {
        std::vector<Rat> v;
        for (const auto& c : cosets) v.push_back(c.d);
        std::sort(v.begin(), v.end());
        return v;
    }

    void build_index() {
        index_.clear();
        for (std::size_t i = 0; i < cosets.size(); ++i) index_[cosets[i].key] = i;
    }

private:
    std::map<PairingVec, std::size_t> index_;
};

// rho([xi]) = (|xi|^2 - sig(Lambda))/4 mod 2, as a representative in [0,2)
inline Rat rho_invariant(const IntegerLattice& l, const std::vector<Rat>& coords) {
    std::size_t r = l.lattice_rank();
    std::vector<Rat> pr(r, Rat(0));
    for (std::size_t i = 0; i < r; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < r; ++j) s += rat(l.gram(i, j)) * coords[j];
        if (!is_integer(s)) throw NotInDualLatticeError();
        pr[i] = s;
    }
    Rat norm(0);
    for (std::size_t i = 0; i < r; ++i) norm += pr[i] * coords[i];
    long sig = signature_index(l.gram);
    return mod2((norm - Rat(Int(sig), 1)) / Rat(Int(4), 1));
}

// The d-invariant of a positive definite lattice realized primitively in
// Euclidean Z^N: project every +-1 vector orthogonally into the lattice,
// group by characteristic coset, and take the minimum norm per coset.
inline DInvariant d_invariant(const IntegerLattice& l, std::size_t ambient_bound = 20) {
    if (!l.basis) throw std::invalid_argument("d_invariant needs an ambient realization");
    const IMat& b = *l.basis;
    std::size_t r = b.rows(), n = b.cols();
    if (r == 0) {
        DInvariant d0;
        d0.gram = l.gram;
        d0.rank = 0;
        d0.disc_order = 1;
        d0.hnf2m = IMat(0, 0);
        d0.snf_u = IMat(0, 0);
        d0.snf_s = IMat(0, 0);
        d0.cosets.push_back(CharacteristicCoset{{}, {}, {}, Rat(0), Rat(0)});
        d0.build_index();
        return d0;
    }
    if (n > ambient_bound) throw AmbientTooLargeError(n);
    if (!is_positive_definite(l.gram)) throw NotPositiveDefiniteError();

    DInvariant out;
    out.gram = l.gram;
    out.rank = r;
    out.disc_order = abs_int(det(l.gram));
    out.factors = invariant_factors(l.gram);
    IMat two_m = l.gram * Int(2);
    out.hnf2m = hermite_col(two_m);
    SmithResult snf = smith_normal_form(l.gram);
    out.snf_u = snf.u;
    out.snf_s = snf.s;

    QMat minv = inverse(to_rational(l.gram));
    std::map<PairingVec, CharacteristicCoset> best;

    std::vector<int> s(n, -1);
    bool carry = false;
    while (!carry) {
        PairingVec p(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) p[i] += b(i, j) * s[j];
        PairingVec key = reduce_mod_columns(p, out.hnf2m);
        Rat norm = dual_norm(minv, p);
        auto it = best.find(key);
        if (it == best.end() || norm < it->second.min_norm ||
            (norm == it->second.min_norm && p < it->second.rep)) {
            CharacteristicCoset c;
            c.key = key;
            c.rep = p;
            c.min_norm = norm;
            best[key] = std::move(c);
        }
        // next +-1 vector
        std::size_t j = 0;
        for (; j < n; ++j) {
            if (s[j] == -1) {
                s[j] = 1;
                break;
            }
            s[j] = -1;
        }
        carry = (j == n);
    }

    if (Int(best.size()) != out.disc_order) throw CosetCountMismatchError();

    for (auto& [key, c] : best) {
        c.coords.assign(r, Rat(0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) c.coords[i] += minv(i, j) * rat(c.rep[j]);
        c.d = (c.min_norm - rat(Int(r))) / Rat(Int(4), 1);
        out.cosets.push_back(c);
    }
    out.build_index();
    return out;
}

namespace detail {

// all elements of the finite abelian group with the given invariant factors
inline std::vector<std::vector<Int>> group_elements(const std::vector<Int>& factors) {
    std::vector<std::vector<Int>> elems{{}};
    for (const Int& f : factors) {
        std::vector<std::vector<Int>> next;
        for (const auto& e : elems)
            for (Int v = 0; v < f; ++v) {
                auto e2 = e;
                e2.push_back(v);
                next.push_back(std::move(e2));
            }
        elems = std::move(next);
    }
    return elems;
}

inline std::vector<Int> group_add(const std::vector<Int>& a, const std::vector<Int>& b,
                                  const std::vector<Int>& factors) {
    std::vector<Int> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = (a[i] + b[i]) % factors[i];
    return s;
}

inline std::vector<Int> group_scale(const Int& k, const std::vector<Int>& a,
                                    const std::vector<Int>& factors) {
    std::vector<Int> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int v = (k * a[i]) % factors[i];
        if (v < 0) v += factors[i];
        s[i] = v;
    }
    return s;
}

// enumerate all group isomorphisms (as generator-image tuples) between two
// groups with equal invariant factor lists
inline std::vector<std::vector<std::vector<Int>>> group_isomorphisms(const std::vector<Int>& factors) {
    auto elems = group_elements(factors);
    std::size_t k = factors.size();
    std::vector<std::vector<std::vector<Int>>> isos;
    std::vector<std::vector<Int>> images(k);

    auto order_of = [&](const std::vector<Int>& e) {
        Int o = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (e[i] == 0) continue;
            Int g = gcd_int(e[i], factors[i]);
            Int oi = factors[i] / g;
            o = o / gcd_int(o, oi) * oi;
        }
        return o;
    };

    auto rec = [&](auto&& self, std::size_t gi) -> void {
        if (gi == k) {
            // surjectivity (hence bijectivity): images must generate the group
            std::map<std::vector<Int>, bool> seen;
            std::vector<Int> c(k, 0);
            bool carry = false;
            while (!carry) {
                std::vector<Int> e(k, 0);
                for (std::size_t i = 0; i < k; ++i)
                    e = group_add(e, group_scale(c[i], images[i], factors), factors);
                seen[e] = true;
                std::size_t j = 0;
                for (; j < k; ++j) {
                    c[j] += 1;
                    if (c[j] < factors[j]) break;
                    c[j] = 0;
                }
                carry = (j == k);
            }
            Int prod = 1;
            for (const auto& f : factors) prod *= f;
            if (Int(seen.size()) == prod) isos.push_back(images);
            return;
        }
        for (const auto& e : elems) {
            if (order_of(e) != factors[gi]) continue;
            images[gi] = e;
            self(self, gi + 1);
        }
    };
    if (k == 0)
        isos.push_back({});
    else
        rec(rec, 0);
    return isos;
}

}  // namespace detail

// Isomorphism of d-invariants: a group isomorphism psi of the discriminant
// groups together with a psi-equivariant bijection phi of the coset torsors
// such that d2 = sign * (d1 o phi^{-1}).  Decided by brute force over group
// isomorphisms and base points.
inline bool d_isomorphic(const DInvariant& d1, const DInvariant& d2, int sign,
                         const Int& order_cap = 512) {
    if (d1.disc_order != d2.disc_order) return false;
    if (d1.factors != d2.factors) return false;
    if (d1.disc_order > order_cap) throw OrderTooLargeError();
    if (d1.rank == 0 && d2.rank == 0) return d1.cosets[0].d * Rat(Int(sign), 1) == d2.cosets[0].d;

    const auto& factors = d1.factors;
    auto elems = detail::group_elements(factors);
    auto isos = detail::group_isomorphisms(factors);

    const PairingVec x0 = d1.cosets[0].key;
    // precompute d1 over the torsor relative to x0
    std::map<std::vector<Int>, Rat> f1;
    for (const auto& g : elems) {
        PairingVec gx = d1.act(x0, d1.group_rep(g));
        f1[g] = d1.coset(gx).d;
    }

    for (const auto& psi : isos) {
        for (const auto& base : d2.cosets) {
            bool ok = true;
            for (const auto& g : elems) {
                // psi(g) = sum g_i * psi_images[i]
                std::vector<Int> pg(factors.size(), 0);
                for (std::size_t i = 0; i < factors.size(); ++i)
                    pg = detail::group_add(pg, detail::group_scale(g[i], psi[i], factors), factors);
                PairingVec y = d2.act(base.key, d2.group_rep(pg));
                if (d2.coset(y).d != f1[g] * Rat(Int(sign), 1)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace knotlat
