#include <gtest/gtest.h>

#include <random>

#include "cocal7/g2.hpp"
#include "cocal7/linsolve.hpp"
#include "cocal7/literals.hpp"
#include "oracle.hpp"

using namespace cocal7;

namespace {

SU3Data standard_flat() {
    return SU3Data(parse_form("e^{12}+e^{34}+e^{56}", 6), parse_form("e^{136}+e^{145}+e^{235}-e^{246}", 6));
}

// the nearly half-flat pair on 1A found by the solver
SU3Data pair_1a() { return SU3Data(parse_form("e^{16}-e^{25}+e^{34}", 6), parse_form("-e^{456}", 6)); }

TEST(BuildPhi, StandardFlatExpansion) {
    G2Data d = build_phi(LieAlgebra::abelian(6), standard_flat());
    EXPECT_EQ(d.phi, parse_form("e^{1234}+e^{1256}+e^{3456}+e^{1367}+e^{1457}+e^{2357}-e^{2467}", 7));
    EXPECT_EQ(d.theta, parse_form("e^{7}", 7));
    EXPECT_EQ(d.x, Vector::frame(7, 7));
    EXPECT_EQ(d.theta_of_x(), 1);
    EXPECT_EQ(d.algebra, LieAlgebra::abelian(7));
}

TEST(BuildPhi, DegenerateInputs) {
    SU3Data only_psi(parse_form("0", 6), parse_form("e^{136}", 6));
    G2Data a = build_phi(LieAlgebra::abelian(6), only_psi);
    EXPECT_EQ(a.phi, parse_form("e^{1367}", 7));

    SU3Data only_omega(parse_form("e^{12}+e^{34}+e^{56}", 6), parse_form("0", 6));
    G2Data b = build_phi(LieAlgebra::abelian(6), only_omega);
    EXPECT_EQ(b.phi, parse_form("e^{1234}+e^{1256}+e^{3456}", 7));
    EXPECT_TRUE(contract(Vector::frame(7, 7), b.phi).is_zero());

    SU3Data zero(parse_form("0", 6), parse_form("0", 6));
    EXPECT_THROW(build_phi(LieAlgebra::abelian(6), zero), std::domain_error);
}

TEST(ConformalFactor, AbelianIsCocalibrated) {
    G2Data d(LieAlgebra::abelian(7), parse_form("e^{1234}", 7), parse_form("e^{7}", 7), Vector::frame(7, 7));
    auto lambda = conformal_factor(d);
    ASSERT_TRUE(lambda.has_value());
    EXPECT_EQ(*lambda, 0);
}

TEST(ConformalFactor, SolverPairOn1AGivesOne) {
    G2Data d = build_phi(*catalog("1A").algebra, pair_1a());
    auto lambda = conformal_factor(d);
    ASSERT_TRUE(lambda.has_value());
    EXPECT_EQ(*lambda, 1);
    // the residual behind it: d(omega) ^ omega = 0 even though d(omega) != 0
    LieAlgebra h = *catalog("1A").algebra;
    ExteriorForm dom = ce_differential(h, pair_1a().omega);
    EXPECT_FALSE(dom.is_zero());
    EXPECT_TRUE(wedge(dom, pair_1a().omega).is_zero());
}

TEST(ConformalFactor, BuildPhiWithNonzeroResidualHasNoFactor) {
    // standard omega on 1A: d(omega) = 0 would be needed... here d psi != 1/2 omega^2
    // and d(omega)^omega = 0, but the two theta-components differ, so no scalar works
    LieAlgebra h = *catalog("1A").algebra;
    SU3Data s(parse_form("e^{12}+e^{34}+e^{56}", 6), parse_form("e^{136}", 6));
    G2Data d = build_phi(h, s);
    EXPECT_FALSE(conformal_factor(d).has_value());
}

TEST(ConformalFactor, InvariantUnderPhiScaling) {
    std::mt19937 rng(97);
    G2Data base = build_phi(*catalog("1A").algebra, pair_1a());
    for (int t = 0; t < 50; ++t) {
        Rational c = oracle::random_nonzero_rational(rng);
        G2Data scaled(base.algebra, c * base.phi, base.theta, base.x);
        EXPECT_EQ(conformal_factor(scaled), conformal_factor(base));
    }
}

TEST(ConformalFactor, InvariantUnderFrameRelabeling) {
    std::mt19937 rng(101);
    G2Data base = build_phi(*catalog("1A").algebra, pair_1a());
    for (int t = 0; t < 30; ++t) {
        auto perm = oracle::random_permutation(rng, 7);
        G2Data moved(oracle::permute_algebra(base.algebra, perm), oracle::permute_form(base.phi, perm),
                     oracle::permute_form(base.theta, perm), oracle::permute_vector(base.x, perm));
        EXPECT_EQ(conformal_factor(moved), conformal_factor(base));
    }
}

TEST(Decompose, RoundTripRecoversTheInput) {
    std::mt19937 rng(103);
    for (const auto& name : {"1A", "1B", "1C", "2C", "3A"}) {
        LieAlgebra h = *catalog(name).algebra;
        for (int t = 0; t < 120; ++t) {
            ExteriorForm omega = oracle::random_form(rng, 6, 2, 4);
            ExteriorForm psi = oracle::random_form(rng, 6, 3, 4);
            if (wedge(omega, omega).is_zero() && psi.is_zero()) continue;  // phi would vanish
            SU3Data s(omega, psi);
            G2Data d = build_phi(h, s);
            DecomposeResult r = decompose(d, omega);
            EXPECT_EQ(r.psi_minus, embed(psi, 7)) << name;
            EXPECT_EQ(r.sigma, Rational(1, 2) * wedge(embed(omega, 7), embed(omega, 7))) << name;
            EXPECT_TRUE(r.iota_x_psi_minus_zero);
            EXPECT_TRUE(r.iota_x_sigma_zero);
            if (!wedge(omega, omega).is_zero()) {
                ASSERT_TRUE(r.omega_proportionality.has_value()) << name;
                EXPECT_EQ(*r.omega_proportionality, Rational(1, 2)) << name;
            }
        }
    }
}

TEST(Decompose, PurePartsSeparate) {
    SU3Data only_omega(parse_form("e^{12}+e^{34}+e^{56}", 6), parse_form("0", 6));
    G2Data a = build_phi(LieAlgebra::abelian(6), only_omega);
    DecomposeResult ra = decompose(a);
    EXPECT_TRUE(ra.psi_minus.is_zero());
    EXPECT_EQ(ra.sigma, a.phi);

    SU3Data only_psi(parse_form("0", 6), parse_form("e^{136}+e^{145}", 6));
    G2Data b = build_phi(LieAlgebra::abelian(6), only_psi);
    DecomposeResult rb = decompose(b);
    EXPECT_EQ(rb.psi_minus, parse_form("e^{136}+e^{145}", 7));
    EXPECT_TRUE(rb.sigma.is_zero());
}

TEST(Decompose, RequiresNormalizedX) {
    G2Data d(LieAlgebra::abelian(7), parse_form("e^{1234}", 7), parse_form("e^{7}", 7),
             Rational(2) * Vector::frame(7, 7));
    EXPECT_THROW(decompose(d), std::domain_error);
}

TEST(Decompose, PropOneIdentitiesForGeneralX) {
    // X with extra components still has theta(X) = 1; the contraction
    // identities hold for any such pair
    std::mt19937 rng(107);
    LieAlgebra g = extend_central(*catalog("1C").algebra);
    for (int t = 0; t < 120; ++t) {
        ExteriorForm phi = oracle::random_form(rng, 7, 4, 5);
        if (phi.is_zero()) continue;
        Vector x = Vector::frame(7, 7);
        for (int i = 1; i <= 6; ++i) x[i] = oracle::random_rational(rng);
        G2Data d(g, phi, parse_form("e^{7}", 7), x);
        DecomposeResult r = decompose(d);
        EXPECT_TRUE(r.iota_x_psi_minus_zero);
        EXPECT_TRUE(r.iota_x_sigma_zero);
        EXPECT_EQ(d.phi, r.sigma + wedge(r.psi_minus, d.theta));
    }
}

TEST(VerifyLcc, SolverInstanceOn1A) {
    G2Data d = build_phi(*catalog("1A").algebra, pair_1a());
    LccReport r = verify_lcc(d, pair_1a().omega);
    EXPECT_EQ(r.verdict, LccVerdict::lccc);
    ASSERT_TRUE(r.lambda.has_value());
    EXPECT_EQ(*r.lambda, 1);
    EXPECT_TRUE(r.theta_closed);
    EXPECT_TRUE(r.theta_wedge_phi_nonzero);
    ASSERT_TRUE(r.decomposition.has_value());
    EXPECT_TRUE(r.decomposition->iota_x_psi_minus_zero);
    EXPECT_TRUE(r.decomposition->iota_x_sigma_zero);
    ASSERT_TRUE(r.decomposition->d_psi_minus_equals_sigma.has_value());
    EXPECT_TRUE(*r.decomposition->d_psi_minus_equals_sigma);
    ASSERT_TRUE(r.d_sigma_zero.has_value());
    EXPECT_TRUE(*r.d_sigma_zero);
    ASSERT_TRUE(r.quotient.available);
    EXPECT_EQ(r.quotient.half_flat.kind, HalfFlatKind::proportional);
    EXPECT_EQ(*r.quotient.half_flat.k, Rational(1, 2));
    // the constraint theta ^ (phi + sigma) = 0 fails for this ansatz
    ASSERT_TRUE(r.theta_wedge_phi_plus_sigma_zero.has_value());
    EXPECT_FALSE(*r.theta_wedge_phi_plus_sigma_zero);
}

TEST(VerifyLcc, QuotientScalarWithoutOmega) {
    G2Data d = build_phi(*catalog("1A").algebra, pair_1a());
    LccReport r = verify_lcc(d);
    ASSERT_TRUE(r.quotient.available);
    EXPECT_EQ(r.quotient.half_flat.kind, HalfFlatKind::proportional);
    EXPECT_EQ(*r.quotient.half_flat.k, Rational(1, 2));
}

TEST(VerifyLcc, CocalibratedVerdict) {
    G2Data d(LieAlgebra::abelian(7), parse_form("e^{1234}", 7), parse_form("e^{7}", 7), Vector::frame(7, 7));
    LccReport r = verify_lcc(d);
    EXPECT_EQ(r.verdict, LccVerdict::cocalibrated);
    EXPECT_EQ(*r.lambda, 0);
    EXPECT_TRUE(r.theta_wedge_phi_nonzero);
}

TEST(VerifyLcc, VanishingLeeFormIsRejected) {
    G2Data d(LieAlgebra::abelian(7), parse_form("e^{1234}", 7), parse_form("0", 7), Vector::frame(7, 7));
    LccReport r = verify_lcc(d);
    EXPECT_EQ(r.verdict, LccVerdict::vanishing_lee_form);
}

TEST(VerifyLcc, RescalesXWhenNeeded) {
    G2Data d(LieAlgebra::abelian(7), parse_form("e^{1234}", 7), parse_form("2*e^{7}", 7), Vector::frame(7, 7));
    LccReport r = verify_lcc(d);
    EXPECT_TRUE(r.x_rescaled);
    ASSERT_TRUE(r.decomposition.has_value());
}

TEST(VerifyLcc, LambdaOneInstancesFromThePhiSolver) {
    // assemble G2Data from nullspace elements: each satisfies d phi = theta ^ phi
    std::mt19937 rng(109);
    for (const auto& name : {"1A", "3A"}) {
        LieAlgebra g = extend_central(*catalog(name).algebra);
        ExteriorForm theta = parse_form("e^{7}", 7);
        SolutionSpace space = solve(generic_phi_system(g, theta));
        std::uniform_int_distribution<std::size_t> pick(0, space.basis.size() - 1);
        for (int t = 0; t < 60; ++t) {
            std::vector<Rational> combo(space.column_labels.size());
            for (int parts = 0; parts < 3; ++parts) {
                std::size_t b = pick(rng);
                Rational c = oracle::random_rational(rng);
                for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += c * space.basis[b][i];
            }
            ExteriorForm phi = assemble_form(7, space.column_labels, combo);
            if (phi.is_zero()) continue;
            G2Data d(g, phi, theta, Vector::frame(7, 7));
            auto lambda = conformal_factor(d);
            ASSERT_TRUE(lambda.has_value()) << name;
            if (wedge(theta, phi).is_zero()) {
                EXPECT_EQ(*lambda, 0) << name;  // closed and theta ^ phi = 0
                continue;
            }
            EXPECT_EQ(*lambda, 1) << name;
            DecomposeResult r = decompose(d);
            ASSERT_TRUE(r.d_psi_minus_equals_sigma.has_value()) << name;
            EXPECT_TRUE(*r.d_psi_minus_equals_sigma) << name;
        }
    }
}

TEST(VerifyLcc, QuotientUnavailableForOffAxisX) {
    LieAlgebra g = extend_central(*catalog("1A").algebra);
    ExteriorForm theta = parse_form("e^{1}+e^{7}", 7);
    ExteriorForm phi = parse_form("e^{2345}", 7);
    Vector x = Vector::frame(7, 7);
    G2Data d(g, phi, theta, x);  // theta(X) = 1 but X != theta-sharp
    LccReport r = verify_lcc(d);
    ASSERT_TRUE(r.decomposition.has_value());
    EXPECT_TRUE(r.quotient.available);  // X is still the frame vector e_7
    G2Data d2(g, phi, theta, Vector::frame(7, 1));
    LccReport r2 = verify_lcc(d2);
    EXPECT_FALSE(r2.quotient.available);
}

}  // namespace
