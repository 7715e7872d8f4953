#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lvoa/elements.hpp"

using namespace lvoa;

namespace {

std::shared_ptr<const LatticeVoa> a_tensor(int n, int l, const std::string& symbol = "a") {
    return std::make_shared<const LatticeVoa>(build_a_tensor(n, l, symbol));
}

// x(-1)^2 1 built directly from Fock factors.
StateVector square_of(const LatticeVector& x) {
    const AmbientVector h = to_ambient(x);
    return fock_product({{h, 1}, {h, 1}}, LatticeVector(x.size(), 0));
}

LatticeVector minus(LatticeVector a, const LatticeVector& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

LatticeVector negated(LatticeVector a) {
    for (auto& x : a) x = -x;
    return a;
}

}  // namespace

TEST(Elements, DiagonalCurrentsAtTwoTwo) {
    const auto voa = a_tensor(2, 2);
    const CurrentAlgebra cur = diagonal_currents(*voa, 2, 2);
    EXPECT_EQ(cur.raising[0].value, exponential({1, 0}) + exponential({0, 1}));
    EXPECT_EQ(cur.lowering[0].value, exponential({-1, 0}) + exponential({0, -1}));
    for (const auto& [s, c] : cur.raising[0].value.terms())
        EXPECT_EQ(h_weight(s, cur.cartan_directions[0], voa->lattice()), Rational(2));
    EXPECT_EQ(cur.basis.size(), 3U);
    EXPECT_EQ(cur.raising[0].name, "e[1]");
}

TEST(Elements, DiagonalCurrentsCloseToSl3) {
    const auto voa = a_tensor(3, 2);
    const CurrentAlgebra cur = diagonal_currents(*voa, 3, 2);
    EXPECT_EQ(cur.basis.size(), 8U);
    std::vector<StateVector> values;
    for (const auto& e : cur.basis) values.push_back(e.value);
    EXPECT_EQ(lie_closure(*voa, values).size(), 8U);
}

TEST(Elements, PrimeOmegaTranscription) {
    const auto voa = a_tensor(2, 2);
    const LatticeVector x = minus(tensor_root(*voa, 2, 1, 1), tensor_root(*voa, 2, 1, 2));
    StateVector expected = Rational(1, 4) * square_of(x);
    expected += exponential(x);
    expected += exponential(negated(x));
    expected *= Rational(1, 4);
    const NamedElement pw = prime_omega(*voa, 1, 2, 2);
    EXPECT_EQ(pw.value, expected);
    EXPECT_EQ(pw.name, "pw[1]");
    EXPECT_EQ(pw.weight, Rational(2));
}

TEST(Elements, PrimeOmegaCentralCharge) {
    for (int l : {2, 3}) {
        const auto voa = a_tensor(2, l);
        const VirasoroReport r = virasoro_check(prime_omega(*voa, 1, 2, l).value, *voa, 3);
        EXPECT_TRUE(r.is_virasoro) << l;
        ASSERT_TRUE(r.central_charge.has_value());
        EXPECT_EQ(*r.central_charge, Rational(2 * (l - 1), l + 2));
    }
}

TEST(Elements, PrimeOmegaLiesInHeisenbergCommutant) {
    const auto voa = a_tensor(3, 2);
    for (int i = 1; i <= 2; ++i) {
        const StateVector pw = prime_omega(*voa, i, 3, 2).value;
        for (const auto& h : fixtures::diagonal_directions(3, 2))
            for (int m = 0; m <= 2; ++m) EXPECT_TRUE(heisenberg_mode(h, m, pw, *voa).is_zero());
    }
    const auto small = a_tensor(2, 2);
    const BracketReport br = commuting_check(prime_omega(*small, 1, 2, 2).value,
                                             heisenberg_state(fixtures::diagonal_directions(2, 2)[0], 2), *small, 3);
    EXPECT_TRUE(br.ok);
}

TEST(Elements, TildeGeneratorsVirasoroAndPrimary) {
    for (int n : {2, 3}) {
        const auto voa = a_tensor(2, n, "b");
        const TildeGenerators t = tilde_generators(*voa, 1, n, 2);
        const VirasoroReport r = virasoro_check(t.omega.value, *voa, 3);
        EXPECT_TRUE(r.is_virasoro);
        ASSERT_TRUE(r.central_charge.has_value());
        EXPECT_EQ(*r.central_charge, Rational(2 * (n - 1), n + 2));
        EXPECT_EQ(mode(t.omega.value, 1, t.w3.value, *voa), Rational(3) * t.w3.value);
        for (int m = 2; m <= 3; ++m) EXPECT_TRUE(mode(t.omega.value, m, t.w3.value, *voa).is_zero());
    }
    EXPECT_TRUE(tilde_generators(*a_tensor(2, 2, "b"), 1, 2, 2).w3.value.is_zero());
    EXPECT_FALSE(tilde_generators(*a_tensor(2, 3, "b"), 1, 3, 2).w3.value.is_zero());
}

TEST(Elements, PullbackGeneratorsLieInTheCoset) {
    for (int n : {2, 3}) {
        const DualityMaps maps = build_duality_maps(n, 2);
        const UntildeGenerators u = untilde_generators(maps, 1);
        const VirasoroReport r = virasoro_check(u.omega.value, *maps.n_voa.voa, 3);
        EXPECT_TRUE(r.is_virasoro);
        ASSERT_TRUE(r.central_charge.has_value());
        EXPECT_EQ(*r.central_charge, Rational(2 * (n - 1), n + 2));

        const LatticeVoaMap embed = embedding_map(maps.n_voa);
        const CurrentAlgebra cur = diagonal_currents(*maps.ambient, n, 2);
        for (const auto* g : {&u.omega.value, &u.w3.value}) {
            const StateVector amb = push(embed, *g);
            for (const auto& e : fixtures::chevalley_values(cur))
                for (int m = 0; m <= 3; ++m) EXPECT_TRUE(mode(e, m, amb, *maps.ambient).is_zero());
        }
        const TildeGenerators t = tilde_generators(*maps.ambient_tilde, 1, n, 2);
        EXPECT_EQ(push(maps.tau, u.omega.value), restrict_to(maps.n_tilde_voa, t.omega.value));
        EXPECT_TRUE(u.comparison["omega"]["equal"].get<bool>());
        EXPECT_TRUE(u.comparison["w3"]["equal"].get<bool>());
    }
}

TEST(Elements, UAndVAreRelatedBySigmaAndTheta) {
    const int n = 3;
    const DualityMaps maps = build_duality_maps(n, 2);
    const LatticeVoaMap sigma = build_sigma(maps.n_voa, maps.n_tilde_voa, n);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i; j <= n - 1; ++j) {
            const StateVector v = restrict_to(maps.n_voa, v_ij(*maps.ambient, i, j, n).value);
            const StateVector u = restrict_to(maps.n_tilde_voa, u_ij(*maps.ambient_tilde, i, j, n).value);
            EXPECT_EQ(push(sigma, v), u) << i << "," << j;
        }
    for (int i = 1; i <= n - 1; ++i) {
        const StateVector v = restrict_to(maps.n_voa, v_ij(*maps.ambient, i, i, n).value);
        const StateVector pw = restrict_to(maps.n_voa, prime_omega(*maps.ambient, i, n, 2).value);
        EXPECT_EQ(push(maps.theta, v), pw);
    }
    const auto voa = a_tensor(2, n, "b");
    const VirasoroReport r = virasoro_check(u_ij(*voa, 1, 1, n).value, *voa, 3);
    EXPECT_TRUE(r.is_virasoro);
    ASSERT_TRUE(r.central_charge.has_value());
    EXPECT_EQ(*r.central_charge, Rational(1, 2));
}

TEST(Elements, LatticeConformalVector) {
    const auto voa = a_tensor(3, 1);
    const NamedElement w = lattice_conformal(*voa);
    const VirasoroReport r = virasoro_check(w.value, *voa, 3);
    EXPECT_TRUE(r.is_virasoro);
    ASSERT_TRUE(r.central_charge.has_value());
    EXPECT_EQ(*r.central_charge, Rational(2));
    for (const LatticeVector& alpha : {LatticeVector{1, 0}, LatticeVector{1, 1}, LatticeVector{-1, 2}})
        EXPECT_EQ(mode(w.value, 0, exponential(alpha), *voa), fock_product({{to_ambient(alpha), 1}}, alpha));
}

TEST(Elements, SugawaraAndCosetAtTwoTwo) {
    const auto voa = a_tensor(2, 2);
    const CurrentAlgebra cur = diagonal_currents(*voa, 2, 2);
    const NamedElement full = lattice_conformal(*voa);
    const NamedElement sug = sugawara(*voa, cur.basis, 2, 2);
    const NamedElement coset = coset_conformal(*voa, full, sug, cur.basis);
    const VirasoroReport rs = virasoro_check(sug.value, *voa, 3);
    const VirasoroReport rc = virasoro_check(coset.value, *voa, 3);
    EXPECT_TRUE(rs.is_virasoro);
    EXPECT_TRUE(rc.is_virasoro);
    ASSERT_TRUE(rs.central_charge && rc.central_charge);
    EXPECT_EQ(*rs.central_charge, Rational(3, 2));
    EXPECT_EQ(*rc.central_charge, Rational(1, 2));
    EXPECT_TRUE(commuting_check(sug.value, coset.value, *voa, 3).ok);
    EXPECT_TRUE(coset_conformal(*voa, full, full, cur.basis).value.is_zero());
    EXPECT_THROW(coset_conformal(*voa, full, prime_omega(*voa, 1, 2, 2), cur.basis), std::logic_error);
}

TEST(Elements, RepeatedProductIsFactorialTimesDiagonalExponential) {
    for (int l : {2, 3}) {
        const auto voa = a_tensor(2, l);
        const RepeatedProduct rp = repeated_product(*voa, 1, 2, l);
        EXPECT_NE(rp.sign, 0) << l;
        EXPECT_EQ(rp.lhs, Rational(rp.sign) * rp.target);
    }
}

TEST(Elements, MakeElementEnforcesWeight) {
    const auto voa = a_tensor(2, 1);
    EXPECT_THROW(make_element("x", exponential({1}) + voa->vacuum(), *voa, Rational(1)), std::logic_error);
    EXPECT_THROW(make_element("x", exponential({1}), *voa, Rational(2)), std::logic_error);
    EXPECT_NO_THROW(make_element("x", exponential({1}), *voa, Rational(1)));
    EXPECT_NO_THROW(make_element("zero", StateVector{}, *voa, Rational(3)));
}

TEST(Elements, Proportionality) {
    const StateVector a = exponential({1}) + exponential({-1});
    EXPECT_EQ(proportionality(Rational(-3, 2) * a, a), Rational(-3, 2));
    EXPECT_FALSE(proportionality(exponential({1}), a).has_value());
    EXPECT_FALSE(proportionality(a, StateVector{}).has_value());
}
