#include <gtest/gtest.h>

#include "lvoa/cocycle.hpp"
#include "lvoa/lattice.hpp"

using namespace lvoa;

TEST(Lattice, RejectsOddOrIndefiniteGram) {
    EXPECT_THROW(GramLattice({"x"}, {{1}}), std::invalid_argument);
    EXPECT_THROW(GramLattice({"x", "y"}, {{2, 3}, {3, 2}}), std::invalid_argument);
    EXPECT_THROW(GramLattice({"x", "y"}, {{2, 1}, {0, 2}}), std::invalid_argument);
}

TEST(Lattice, ATensorGramAndDeterminant) {
    GramLattice L = build_a_tensor(3, 2);
    ASSERT_EQ(L.rank(), 4);
    EXPECT_EQ(L.gram(0, 1), -1);
    EXPECT_EQ(L.gram(0, 2), 0);
    EXPECT_EQ(L.determinant(), 9);
    EXPECT_EQ(L.labels()[a_tensor_index(3, 2, 2)], "a[2,2]");
}

TEST(Lattice, SublatticesHaveExpectedDeterminants) {
    // N = {sum over copies summing to zero}, K = diagonal: K is A_{n-1}(l).
    for (int n : {2, 3})
        for (int l : {2, 3}) {
            Sublattice k = sublattice_k(n, l);
            std::int64_t ldet = 1;
            for (int i = 0; i < n - 1; ++i) ldet *= l;
            EXPECT_EQ(k.lattice.determinant(), n * ldet);
            Sublattice nn = sublattice_n(n, l);
            EXPECT_EQ(nn.lattice.rank(), (n - 1) * (l - 1));
            // Embedded Gram agrees with the ambient pairing.
            GramLattice amb = build_a_tensor(n, l);
            for (int a = 0; a < nn.lattice.rank(); ++a)
                for (int b = 0; b < nn.lattice.rank(); ++b)
                    EXPECT_EQ(nn.lattice.gram(a, b), amb.inner(nn.embedding[a], nn.embedding[b]));
        }
}

TEST(Lattice, DualQuotientOfA1AndA2) {
    GramLattice a1({"x"}, {{2}});
    auto q = dual_quotient(a1);
    ASSERT_EQ(q.size(), 2U);
    EXPECT_EQ(a1.inner(q[1], q[1]), Rational(1, 2));
    GramLattice a2({"x", "y"}, {{2, -1}, {-1, 2}});
    auto q2 = dual_quotient(a2);
    ASSERT_EQ(q2.size(), 3U);
    for (std::size_t i = 1; i < q2.size(); ++i) EXPECT_EQ(a2.inner(q2[i], q2[i]), Rational(2, 3));
}

TEST(Lattice, JsonRoundTrip) {
    GramLattice L = build_a_tensor(2, 3);
    EXPECT_EQ(GramLattice::from_json(L.to_json()), L);
}

TEST(Cocycle, CommutatorLawOnRandomPairs) {
    GramLattice L = build_a_tensor(3, 2);
    Cocycle eps(L);
    for (int a0 = -2; a0 <= 2; ++a0)
        for (int a3 = -1; a3 <= 1; ++a3)
            for (int b1 = -2; b1 <= 2; ++b1)
                for (int b2 = -1; b2 <= 1; ++b2) {
                    LatticeVector x{a0, 1, 0, a3}, y{1, b1, b2, -1};
                    int expected = (L.inner(x, y) % 2 == 0) ? 1 : -1;
                    EXPECT_EQ(eps.eval(x, y) * eps.eval(y, x), expected);
                }
}

TEST(Cocycle, RejectsTableBreakingCommutatorLaw) {
    GramLattice L({"x", "y"}, {{2, -1}, {-1, 2}});
    EXPECT_THROW(Cocycle(L, {{1, 1}, {1, 1}}), std::invalid_argument);
    EXPECT_NO_THROW(Cocycle(L, {{1, -1}, {1, 1}}));
}

TEST(Cocycle, RestrictionMatchesAmbientOnSublattice) {
    GramLattice amb = build_a_tensor(2, 3);
    Cocycle eps(amb);
    Sublattice n = sublattice_n(2, 3);
    Cocycle r = restrict_cocycle(eps, n);
    LatticeVector x{1, -1}, y{2, 1};
    EXPECT_EQ(r.eval(x, y), eps.eval(n.embed(x), n.embed(y)));
}
