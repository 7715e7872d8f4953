#include <gtest/gtest.h>

#include "lvoa/vertex.hpp"
#include "test_support.hpp"

using namespace lvoa;
using lvoa::testing::all_states;
using lvoa::testing::cartan_a;
using lvoa::testing::lattice_omega;

TEST(Vertex, VacuumAndCreationAxioms) {
    LatticeVoa voa(cartan_a(2));
    for (const auto& v : all_states(voa.lattice(), 2)) {
        EXPECT_EQ(mode(voa.vacuum(), -1, v, voa), v);
        EXPECT_TRUE(mode(voa.vacuum(), 0, v, voa).is_zero());
        EXPECT_EQ(mode(v, -1, voa.vacuum(), voa), v);
        EXPECT_TRUE(mode(v, 0, voa.vacuum(), voa).is_zero());
    }
}

TEST(Vertex, HeisenbergStateActsAsHeisenbergMode) {
    LatticeVoa voa(cartan_a(2));
    StateVector h1 = fock_product({{AmbientVector{Rational(1), Rational(0)}, 1}}, {0, 0});
    for (const auto& v : all_states(voa.lattice(), 3))
        for (int m = -2; m <= 2; ++m)
            EXPECT_EQ(mode(h1, m, v, voa), heisenberg_mode({Rational(1), Rational(0)}, m, v, voa));
}

TEST(Vertex, ExponentialMatchesExpMode) {
    LatticeVoa voa(cartan_a(2));
    for (const auto& v : all_states(voa.lattice(), 3))
        for (int m = -3; m <= 2; ++m)
            EXPECT_EQ(mode(exponential({1, 1}), m, v, voa), exp_mode({1, 1}, m, v, voa));
}

// Closed-form kernel against the iterate recursion on every pair up to weight 3.
TEST(Vertex, FastModesAgreeWithReference) {
    for (const auto& L : {cartan_a(1), cartan_a(2)}) {
        LatticeVoa voa(L);
        ReferenceModes ref(voa);
        auto states = all_states(L, L.rank() == 1 ? 3 : 2);
        for (const auto& u : states)
            for (const auto& v : states)
                for (int m = -2; m <= 3; ++m) ASSERT_EQ(mode(u, m, v, voa), ref.mode(u, m, v)) << to_text(u, L) << " m=" << m << " " << to_text(v, L);
    }
}

TEST(Vertex, SkewSymmetryOnLowWeight) {
    LatticeVoa voa(cartan_a(2));
    auto states = all_states(voa.lattice(), 2);
    for (const auto& u : states)
        for (const auto& v : states) {
            // u_0 v = -v_0 u + D(v_1 u) - D^2(v_2 u)/2 + ...
            StateVector rhs;
            StateVector term = mode(v, 0, u, voa);
            rhs -= term;
            for (int j = 1; j <= 4; ++j) {
                StateVector x = mode(v, j, u, voa);
                for (int t = 0; t < j; ++t) x = translation(x, voa);
                Rational f(1);
                for (int t = 2; t <= j; ++t) f /= Rational(t);
                rhs.axpy(Rational(j % 2 == 0 ? -1 : 1) * f, x);
            }
            EXPECT_EQ(mode(u, 0, v, voa), rhs);
        }
}

TEST(Vertex, BorcherdsCommutatorOnSamples) {
    LatticeVoa voa(cartan_a(2));
    auto samples = all_states(voa.lattice(), 2);
    StateVector u = exponential({1, 0}) + fock_product({{AmbientVector{Rational(0), Rational(1)}, 1}}, {0, 0});
    StateVector v = fock_product({{AmbientVector{Rational(1), Rational(1)}, 1}}, {0, 1});
    auto rep = commutator_check(u, v, samples, {{0, 0}, {1, -1}, {-1, 2}, {2, 1}}, voa);
    EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_GT(rep.checked, 0U);
}

TEST(Vertex, StandardConformalVectorIsVirasoro) {
    for (int r : {1, 2}) {
        LatticeVoa voa(cartan_a(r));
        auto rep = virasoro_check(lattice_omega(voa.lattice()), voa, 3);
        EXPECT_TRUE(rep.is_virasoro) << (rep.failures.empty() ? "" : rep.failures.front());
        ASSERT_TRUE(rep.central_charge.has_value());
        EXPECT_EQ(*rep.central_charge, Rational(r));
    }
}

TEST(Vertex, NonConformalCandidateIsRejected) {
    LatticeVoa voa(cartan_a(1));
    StateVector bad = Rational(2) * lattice_omega(voa.lattice());
    EXPECT_FALSE(virasoro_check(bad, voa, 2).is_virasoro);
}

TEST(Vertex, TruncationFlagsDroppedComponents) {
    LatticeVoa voa(cartan_a(1));
    auto r = mode_truncated(exponential({1}), -3, exponential({1}), voa, Rational(3));
    EXPECT_TRUE(r.truncated);
    EXPECT_TRUE(r.value.is_zero());
    auto s = mode_truncated(exponential({1}), -2, exponential({-1}), voa, Rational(3));
    EXPECT_FALSE(s.truncated);
}

TEST(Vertex, NonIntegralPairingThrows) {
    LatticeVoa voa(GramLattice({"x"}, {{2}}), Cocycle(GramLattice({"x"}, {{2}})), {Rational(1, 4)});
    EXPECT_THROW((void)mode(exponential({1}), 0, exponential({0}), voa), std::domain_error);
}
