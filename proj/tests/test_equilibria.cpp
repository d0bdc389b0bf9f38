#include <gtest/gtest.h>

#include <cmath>

#include "dengue/equilibria.hpp"
#include "dengue/integrator.hpp"
#include "test_support.hpp"

using namespace dengue;
using dengue::testing::ParamSampler;
using dengue::testing::rel_diff;

namespace {

const ModelParams cv = capeverde2009_params();

// Cape Verde endemic root at c = 0, from an independent 40-digit solve of
// rhs = 0 (mpmath.findroot).
constexpr std::array<double, 7> kEndemicC0 = {83638.844520273979955, 61.16920490446792238,
                                              45.871593441795842903, 1350000.0,
                                              1187531.8642440362628, 234.06787798186858426,
                                              234.06787798186858426};
// Same at c = 0.05.
constexpr std::array<double, 7> kEndemicC005 = {265884.80061402466861, 33.043743876843293552,
                                                24.779939305744867053, 1300500.0,
                                                738246.96025022975569, 61.65161260544261788,
                                                39.775233938995237342};

}  // namespace

TEST(TrivialEquilibrium, CapeVerde)
{
    for (double c : {0.0, 0.2, 5.0}) {
        const Equilibrium e = trivial_equilibrium(cv, ControlLevel(c));
        EXPECT_EQ(e.kind, EquilibriumKind::Trivial);
        EXPECT_EQ(e.state[kSh], 480000.0);
        for (std::size_t i = 1; i < kDim; ++i) EXPECT_EQ(e.state[i], 0.0);
        EXPECT_EQ(e.residual_norm, 0.0);
        EXPECT_FALSE(e.refined);
    }
}

TEST(Brdfe, CapeVerdeClosedForm)
{
    const Equilibrium e = brdfe(cv, ControlLevel(0.0));
    EXPECT_EQ(e.kind, EquilibriumKind::BRDFE);
    // 3 * 480000 * 0.45 / (0.08 * 6) and 3 * 480000 * 0.45 * 11 / 6
    EXPECT_NEAR(e.state[kAm], 1350000.0, 1e-12 * 1350000.0);
    EXPECT_NEAR(e.state[kSm], 1188000.0, 1e-12 * 1188000.0);
    EXPECT_EQ(e.state[kSh], 480000.0);
    EXPECT_EQ(e.state[kEh] + e.state[kIh] + e.state[kEm] + e.state[kIm], 0.0);
    EXPECT_LT(e.residual_norm, 1e-12);
    const State7 f = rhs(cv, ControlLevel(0.0), e.state);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_LT(std::abs(f[i]), 1e-9 * cv.m() * cv.N_h());
}

TEST(Brdfe, CollapseWhenTooFewEggs)
{
    // M > 0 at c = 0 needs mu_b > mu_m (mu_A + eta_A) / eta_A = 0.375
    for (double mu_b : {0.3, 0.375, 0.0}) {
        auto v = capeverde2009_values();
        v.mu_b = mu_b;
        EXPECT_THROW(brdfe(ModelParams(v), ControlLevel(0.0)), RegimeError) << mu_b;
    }
    auto v = capeverde2009_values();
    v.mu_b = 0.4;
    EXPECT_NO_THROW(brdfe(ModelParams(v), ControlLevel(0.0)));
}

TEST(Brdfe, PublishedFormIsNotAFixedPointUnderControl)
{
    // The exact disease-free adult level under control is K M / (mu_b (mu_m + c));
    // refinement recovers it from the published closed form.
    const ControlLevel c(0.2);
    const Equilibrium pub = brdfe(cv, c);
    EXPECT_GT(pub.residual_norm, 1e-3);
    const Equilibrium exact = refine(cv, c, pub.state);
    EXPECT_EQ(exact.kind, EquilibriumKind::BRDFE);
    const double M = mosquito_viability(cv, c);
    EXPECT_LT(rel_diff(exact.state[kSm], cv.K() * M / (cv.mu_b() * (cv.mu_m() + 0.2))), 1e-10);
    EXPECT_LT(rel_diff(exact.state[kAm], pub.state[kAm]), 1e-10);
}

TEST(Brdfe, RandomDrawsLieInOmegaWhenAdultBoundAllows)
{
    // The closed form respects S_m <= m N_h only when k M / (mu_b mu_m) <= m;
    // the adult bound of Omega is not implied by the other parameters.
    ParamSampler gen(21);
    int inside = 0, outside = 0;
    for (int i = 0; i < 200; ++i) {
        const auto d = gen.viable();
        const ModelParams p(d.values);
        const ControlLevel c(d.c);
        const Equilibrium e = brdfe(p, c);
        const double M = mosquito_viability(p, c);
        const bool fits = p.k() * M / (p.mu_b() * p.mu_m()) <= p.m();
        EXPECT_EQ(in_omega(p, e.state), fits);
        (fits ? inside : outside)++;
        // R0^2 evaluated at the BRDFE susceptibles equals the k, M form.
        EXPECT_LT(rel_diff(r0_squared_at(p, c, e.state[kSh], e.state[kSm]), r0_squared_closed_form(p, c)), 1e-12);
    }
    EXPECT_GT(inside, 100);
}

TEST(EndemicClosedForm, CapeVerdeInteriorPoint)
{
    const Equilibrium e = endemic_closed_form(cv, ControlLevel(0.0));
    EXPECT_EQ(e.kind, EquilibriumKind::Endemic);
    EXPECT_FALSE(e.refined);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_GT(e.state[i], 0.0) << kCompartmentNames[i];
    EXPECT_TRUE(in_omega(cv, e.state));
    EXPECT_DOUBLE_EQ(e.state[kEm] / e.state[kIm], (cv.mu_m() + 0.0) / cv.eta_m());
    // exact at c = 0
    EXPECT_LT(e.residual_norm, 1e-12);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_LT(rel_diff(e.state[i], kEndemicC0[i]), 1e-9);
}

TEST(EndemicClosedForm, ExposedToInfectedMosquitoRatio)
{
    const Equilibrium e = endemic_closed_form(cv, ControlLevel(0.05));
    EXPECT_NEAR(e.state[kEm] / e.state[kIm], (cv.mu_m() + 0.05) / cv.eta_m(), 1e-12);
}

TEST(EndemicClosedForm, ResidualUnderControlIsRecorded)
{
    // With c > 0 the published expression is not a root; the residual says so.
    const Equilibrium e = endemic_closed_form(cv, ControlLevel(0.05));
    EXPECT_EQ(e.residual_norm, residual(cv, ControlLevel(0.05), e.state));
    EXPECT_GT(e.residual_norm, 1e-10);
}

TEST(EndemicClosedForm, AbsentBelowThreshold)
{
    EXPECT_THROW(endemic_closed_form(cv, ControlLevel(0.2)), RegimeError);
    auto v = capeverde2009_values();
    v.mu_b = 0.0;
    EXPECT_THROW(endemic_closed_form(ModelParams(v), ControlLevel(0.0)), RegimeError);
}

TEST(Refine, BrdfeIsAlreadyARoot)
{
    const Equilibrium b = brdfe(cv, ControlLevel(0.0));
    const Equilibrium r = refine(cv, ControlLevel(0.0), b.state);
    EXPECT_TRUE(r.refined);
    EXPECT_LE(r.iterations, 2);
    EXPECT_EQ(r.kind, EquilibriumKind::BRDFE);
    EXPECT_LT(r.residual_norm, 1e-10);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_NEAR(r.state[i], b.state[i], 1e-9 * component_scales(cv)[i]);
}

TEST(Refine, EndemicRootAtZeroControl)
{
    const Equilibrium r = refine(cv, ControlLevel(0.0), endemic_closed_form(cv, ControlLevel(0.0)).state);
    EXPECT_TRUE(r.refined);
    EXPECT_EQ(r.kind, EquilibriumKind::Endemic);
    EXPECT_LT(r.residual_norm, 1e-10);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_LT(rel_diff(r.state[i], kEndemicC0[i]), 1e-10);
}

TEST(Refine, RecoversRootFromPerturbedGuess)
{
    State7 guess;
    guess.x = kEndemicC0;
    guess[kIh] *= 1.01;
    const Equilibrium r = refine(cv, ControlLevel(0.0), guess);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_LT(rel_diff(r.state[i], kEndemicC0[i]), 1e-8);
}

TEST(Refine, FailureCarriesResidual)
{
    // M = 0 exactly and no mosquitoes: the aquatic/adult block of the
    // Jacobian is singular.
    ParamValues v{};
    v.N_h = 100; v.B = 0.5; v.beta_mh = 0.5; v.beta_hm = 0.5; v.mu_h = 0.01; v.eta_h = 0.25;
    v.mu_m = 2; v.mu_b = 4; v.mu_A = 1; v.eta_A = 1; v.eta_m = 1; v.nu_h = 0.25; v.m = 2; v.k = 3; v.K = 300;
    const ModelParams p(v);
    State7 guess;
    guess[kSh] = 99;
    guess[kEh] = 1;
    try {
        refine(p, ControlLevel(0.0), guess);
        FAIL() << "expected RefinementError";
    } catch (const RefinementError& e) {
        EXPECT_GT(e.last_residual(), 0.0);
        EXPECT_EQ(e.last_residual(), residual(p, ControlLevel(0.0), guess));
    }
}

TEST(EndemicEquilibrium, ExistsBelowThreshold)
{
    const Equilibrium e0 = endemic_equilibrium(cv, ControlLevel(0.0));
    EXPECT_LT(e0.residual_norm, 1e-10);
    const Equilibrium e1 = endemic_equilibrium(cv, ControlLevel(0.05));
    EXPECT_LT(e1.residual_norm, 1e-10);
    for (std::size_t i = 0; i < kDim; ++i) EXPECT_LT(rel_diff(e1.state[i], kEndemicC005[i]), 1e-8);
}

TEST(EndemicEquilibrium, InteriorGuessesLeaveTheInteriorAboveThreshold)
{
    ParamSampler gen(22);
    for (double c : {0.2, 0.3}) {
        EXPECT_THROW(endemic_equilibrium(cv, ControlLevel(c)), RegimeError);
        for (int i = 0; i < 20; ++i) {
            const State7 guess = gen.state_in_omega(cv);
            try {
                const Equilibrium r = refine(cv, ControlLevel(c), guess);
                bool interior = true;
                for (std::size_t k = 0; k < kDim; ++k) interior = interior && r.state[k] > 1e-9 * component_scales(cv)[k];
                EXPECT_FALSE(interior && r.kind == EquilibriumKind::Endemic)
                    << "interior endemic root found at c = " << c;
            } catch (const RefinementError&) {
                // no root reached from this guess: also not an interior endemic root
            }
        }
    }
}

TEST(Residual, Examples)
{
    EXPECT_EQ(residual(cv, ControlLevel(0.0), trivial_equilibrium(cv).state), 0.0);
    EXPECT_LT(residual(cv, ControlLevel(0.0), brdfe(cv, ControlLevel(0.0)).state), 1e-12);
    EXPECT_GT(residual(cv, ControlLevel(0.0), capeverde2009_initial(cv)), 0.0);
}

TEST(Equilibria, FixedPointIdentityAtZeroControl)
{
    ParamSampler gen(23);
    for (int i = 0; i < 200; ++i) {
        auto d = gen.any();
        const ModelParams p(d.values);
        const ControlLevel c(0.0);
        const double bound = 1e-9 * std::max(p.N_h(), p.m() * p.N_h());
        auto check = [&](const Equilibrium& e) {
            const State7 f = rhs(p, c, e.state);
            for (std::size_t k = 0; k < kDim; ++k) ASSERT_LT(std::abs(f[k]), bound);
        };
        check(trivial_equilibrium(p, c));
        if (mosquito_viability(p, c) > 0.0) check(brdfe(p, c));
    }
}
