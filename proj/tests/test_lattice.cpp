#include <gtest/gtest.h>

#include <random>

#include "knotlat/lattice.hpp"

using namespace knotlat;

namespace {

// random unimodular matrix as a product of elementary shears and swaps
IMat random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
    std::uniform_int_distribution<int> pick(0, int(n) - 1), shear(-2, 2);
    IMat p = IMat::identity(n);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IMat e = IMat::identity(n);
        e(i, j) = shear(rng);
        p = p * e;
    }
    return p;
}

// signature oracle via leading principal minors (valid when all are nonzero)
long sylvester_signature(const IMat& m) {
    std::size_t n = m.rows();
    long pos = 0, neg = 0;
    Int prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        IMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
        Int d = det(sub);
        if ((d > 0 && prev > 0) || (d < 0 && prev < 0))
            ++pos;
        else
            ++neg;
        prev = d;
    }
    return pos - neg;
}

}  // namespace

TEST(Signature, Basics) {
    Inertia s = signature(IMat::identity(5));
    EXPECT_EQ(s.pos, 5u);
    EXPECT_EQ(s.neg, 0u);
    EXPECT_EQ(s.zero, 0u);

    IMat neg{{Int(-3), Int(1)}, {Int(1), Int(-3)}};
    s = signature(neg);
    EXPECT_EQ(s.pos, 0u);
    EXPECT_EQ(s.neg, 2u);
    EXPECT_EQ(sylvester_signature(neg), -2);

    IMat hyp{{Int(0), Int(1)}, {Int(1), Int(0)}};
    s = signature(hyp);
    EXPECT_EQ(s.pos, 1u);
    EXPECT_EQ(s.neg, 1u);

    IMat sing{{Int(1), Int(1)}, {Int(1), Int(1)}};
    s = signature(sing);
    EXPECT_EQ(s.pos, 1u);
    EXPECT_EQ(s.zero, 1u);
}

TEST(Signature, InvariantUnderCongruence) {
    std::mt19937 rng(7);
    IMat m{{Int(2), Int(1), Int(0)}, {Int(1), Int(-3), Int(2)}, {Int(0), Int(2), Int(5)}};
    long base = signature_index(m);
    for (int i = 0; i < 10; ++i) {
        IMat p = random_unimodular(rng, 3);
        EXPECT_EQ(signature_index(p.transpose() * m * p), base);
    }
}

TEST(DiscriminantGroup, Examples) {
    auto g = discriminant_group(IntegerLattice::from_gram(IMat{{Int(3), Int(1)}, {Int(1), Int(3)}}));
    EXPECT_EQ(g.order, 8);
    EXPECT_EQ(g.factors, std::vector<Int>{Int(8)});

    g = discriminant_group(IntegerLattice::from_gram(IMat::identity(5)));
    EXPECT_EQ(g.order, 1);
    EXPECT_TRUE(g.factors.empty());

    IMat cw{{Int(2), Int(-1), Int(0)}, {Int(-1), Int(3), Int(-1)}, {Int(0), Int(-1), Int(2)}};
    g = discriminant_group(IntegerLattice::from_gram(cw));
    EXPECT_EQ(g.order, 8);
}

TEST(ShortVectors, MinimaAndCounts) {
    IMat m{{Int(3), Int(1)}, {Int(1), Int(3)}};
    auto sv = short_vectors(m, 3);
    // minima of [[3,1],[1,3]] are norm 3: (1,0), (0,1), and (1,-1) has norm 4 > 3
    ASSERT_EQ(sv.size(), 2u);
    EXPECT_EQ(sv[0].second, 3);
    EXPECT_EQ(sv[1].second, 3);
    auto spectrum = norm_spectrum(IMat{{Int(1), Int(0)}, {Int(0), Int(9)}}, 3);
    ASSERT_EQ(spectrum.size(), 1u);  // only (1,0) with norm 1
    EXPECT_EQ(spectrum[0], 1);
}

TEST(PdIsometric, SignFlipPair) {
    IMat a{{Int(3), Int(1)}, {Int(1), Int(3)}};
    IMat b{{Int(3), Int(-1)}, {Int(-1), Int(3)}};
    auto r = pd_isometric(IntegerLattice::from_gram(a), IntegerLattice::from_gram(b));
    ASSERT_TRUE(r.isometric);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->transpose() * a * *r.witness, b);
    EXPECT_EQ(det(*r.witness), 1);
}

TEST(PdIsometric, NormMultisetSeparates) {
    IMat a{{Int(3), Int(1)}, {Int(1), Int(3)}};
    IMat b{{Int(1), Int(0)}, {Int(0), Int(9)}};
    auto r = pd_isometric(IntegerLattice::from_gram(a), IntegerLattice::from_gram(b));
    EXPECT_FALSE(r.isometric);
}

TEST(PdIsometric, RandomConjugatesUpToRank5) {
    std::mt19937 rng(12345);
    for (std::size_t n = 1; n <= 5; ++n) {
        // realize a positive definite gram from a random full-rank basis
        IMat b(n, n + 1);
        std::uniform_int_distribution<int> dist(-2, 2);
        do {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n + 1; ++j) b(i, j) = dist(rng);
        } while (det(b * b.transpose()) == 0);
        IMat m = b * b.transpose();
        IMat p = random_unimodular(rng, n, 8);
        IMat m2 = p.transpose() * m * p;
        auto r = pd_isometric(IntegerLattice::from_gram(m), IntegerLattice::from_gram(m2));
        ASSERT_TRUE(r.isometric);
        EXPECT_EQ(r.witness->transpose() * m * *r.witness, m2);
    }
}

TEST(PdIsometric, ReorderedBasisYes) {
    IMat m{{Int(2), Int(-1), Int(0)}, {Int(-1), Int(3), Int(-1)}, {Int(0), Int(-1), Int(2)}};
    IMat perm(3, 3);
    perm(0, 2) = 1;
    perm(1, 0) = 1;
    perm(2, 1) = 1;
    IMat m2 = perm.transpose() * m * perm;
    auto r = pd_isometric(IntegerLattice::from_gram(m), IntegerLattice::from_gram(m2));
    EXPECT_TRUE(r.isometric);
}

TEST(UnimodularCongruent, SignChangeWitnessHasDetOne) {
    IMat a{{Int(3), Int(1)}, {Int(1), Int(3)}};
    IMat b{{Int(3), Int(-1)}, {Int(-1), Int(3)}};
    auto r = unimodular_congruent(a, b);
    ASSERT_EQ(r.verdict, CongruenceVerdict::Yes);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(det(*r.witness), 1);
    EXPECT_EQ(r.witness->transpose() * a * *r.witness, b);
}

TEST(UnimodularCongruent, ShortestNormSeparates) {
    IMat a{{Int(3), Int(1)}, {Int(1), Int(3)}};
    IMat b{{Int(1), Int(0)}, {Int(0), Int(9)}};
    auto r = unimodular_congruent(a, b);
    EXPECT_EQ(r.verdict, CongruenceVerdict::No);
}

TEST(UnimodularCongruent, RandomConjugatesSayYes) {
    std::mt19937 rng(99);
    IMat m{{Int(2), Int(1)}, {Int(1), Int(4)}};
    for (int i = 0; i < 5; ++i) {
        IMat p = random_unimodular(rng, 2, 6);
        if (det(p) != 1) continue;
        auto r = unimodular_congruent(m, p.transpose() * m * p);
        EXPECT_EQ(r.verdict, CongruenceVerdict::Yes);
    }
}

TEST(UnimodularCongruent, SeparatedBySignature) {
    IMat a{{Int(-1), Int(0)}, {Int(0), Int(-1)}};
    IMat b{{Int(1), Int(0)}, {Int(0), Int(1)}};
    auto r = unimodular_congruent(a, b);
    EXPECT_EQ(r.verdict, CongruenceVerdict::No);
    EXPECT_EQ(r.reason, "signature");
}

TEST(UnimodularCongruent, SeparatedByDeterminant) {
    IMat a{{Int(1), Int(0)}, {Int(0), Int(-1)}};
    IMat b{{Int(1), Int(0)}, {Int(0), Int(1)}};
    auto r = unimodular_congruent(a, b);
    EXPECT_EQ(r.verdict, CongruenceVerdict::No);
    EXPECT_EQ(r.reason, "determinant");
}

TEST(Determinism, CongruenceVerdictsStable) {
    IMat a{{Int(3), Int(1)}, {Int(1), Int(3)}};
    IMat b{{Int(3), Int(-1)}, {Int(-1), Int(3)}};
    auto r1 = unimodular_congruent(a, b);
    auto r2 = unimodular_congruent(a, b);
    EXPECT_EQ(r1.verdict, r2.verdict);
    EXPECT_EQ(*r1.witness, *r2.witness);
}
