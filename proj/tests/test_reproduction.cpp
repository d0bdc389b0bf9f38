#include <gtest/gtest.h>

#include <cmath>

#include "dengue/reproduction.hpp"
#include "test_support.hpp"

using namespace dengue;
using dengue::testing::ParamSampler;
using dengue::testing::rel_diff;

namespace {

const ModelParams cv = capeverde2009_params();

ModelParams with(void (*edit)(ParamValues&))
{
    auto v = capeverde2009_values();
    edit(v);
    return ModelParams(v);
}

}  // namespace

TEST(BuildNgm, CapeVerdeEntries)
{
    const NgmDecomposition d = build_ngm(cv, ControlLevel(0.0));
    EXPECT_NEAR(d.J_F(0, 3), 0.375, 1e-15);
    EXPECT_NEAR(d.J_F(2, 1), 0.375 * 1188000.0 / 480000.0, 1e-12);
    int nonzero = 0;
    for (double v : d.J_F.data) nonzero += v != 0.0;
    EXPECT_EQ(nonzero, 2);

    EXPECT_DOUBLE_EQ(d.J_V(0, 0), cv.nu_h() + cv.mu_h());
    EXPECT_DOUBLE_EQ(d.J_V(1, 1), cv.eta_h() + cv.mu_h());
    EXPECT_DOUBLE_EQ(d.J_V(2, 2), cv.mu_m() + cv.eta_m());
    EXPECT_DOUBLE_EQ(d.J_V(3, 3), cv.mu_m());
    EXPECT_DOUBLE_EQ(d.J_V(1, 0), -cv.nu_h());
    EXPECT_DOUBLE_EQ(d.J_V(3, 2), -cv.eta_m());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) EXPECT_EQ(d.J_V(i, j), 0.0);
}

TEST(BuildNgm, ControlEntersTransitionDiagonal)
{
    const NgmDecomposition d = build_ngm(cv, ControlLevel(0.1));
    EXPECT_DOUBLE_EQ(d.J_V(2, 2), cv.mu_m() + cv.eta_m() + 0.1);
    EXPECT_DOUBLE_EQ(d.J_V(3, 3), cv.mu_m() + 0.1);
}

TEST(BuildNgm, InverseIsExact)
{
    ParamSampler gen(31);
    for (int i = 0; i < 100; ++i) {
        const auto dr = gen.viable();
        const NgmDecomposition d = build_ngm(ModelParams(dr.values), ControlLevel(dr.c));
        const Matrix4 id = d.J_V * d.J_V_inv;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(id(r, c), r == c ? 1.0 : 0.0, 1e-14);
        for (double v : d.ngm.data) EXPECT_GE(v, 0.0);
    }
}

TEST(BuildNgm, NoTransmissionGivesZeroMatrix)
{
    const auto p = with([](ParamValues& v) { v.beta_mh = v.beta_hm = 0.0; });
    const NgmDecomposition d = build_ngm(p, ControlLevel(0.0));
    for (double v : d.ngm.data) EXPECT_EQ(v, 0.0);
}

TEST(BuildNgm, RequiresViableMosquitoes)
{
    const auto p = with([](ParamValues& v) { v.mu_b = 0.0; });
    EXPECT_THROW(build_ngm(p, ControlLevel(0.0)), RegimeError);
    EXPECT_THROW(r0_spectral(p, ControlLevel(0.0)), RegimeError);
    EXPECT_THROW(r0_closed_form(p, ControlLevel(0.0)), RegimeError);
    EXPECT_THROW(r0_factors(p, ControlLevel(0.0)), RegimeError);
    EXPECT_THROW(r0_spectral(cv, ControlLevel(collapse_control(cv) + 0.01)), RegimeError);
}

TEST(R0Spectral, CapeVerde)
{
    EXPECT_NEAR(r0_spectral(cv, ControlLevel(0.0)), 2.396, 0.001);
    EXPECT_NEAR(r0_spectral(cv, ControlLevel(0.156961)), 1.0, 0.001);
}

TEST(R0Spectral, BrokenCycle)
{
    const auto p = with([](ParamValues& v) { v.beta_mh = 0.0; });
    EXPECT_NEAR(r0_spectral(p, ControlLevel(0.0)), 0.0, 1e-12);
}

TEST(R0ClosedForm, CapeVerdeHandEvaluation)
{
    // B^2 k b_hm b_mh eta_m nu_h M / (mu_b (eta_h+mu_h) mu_m (c+mu_m)(c+eta_m+mu_m)(mu_h+nu_h)),
    // c = 0: 3 * 0.140625 * (1/11) * 0.25 * 0.45
    //        / (6 * (1/3 + mu_h) * (1/11)^2 * (2/11) * (1/4 + mu_h))
    const double mu_h = 1.0 / (71 * 365);
    const double num = 3 * 0.375 * 0.375 * (1.0 / 11) * 0.25 * 0.45;
    const double den = 6 * (1.0 / 3 + mu_h) * (1.0 / 11) * (1.0 / 11) * (2.0 / 11) * (0.25 + mu_h);
    EXPECT_NEAR(r0_squared_closed_form(cv, ControlLevel(0.0)), num / den, 1e-12);
    EXPECT_NEAR(r0_squared_closed_form(cv, ControlLevel(0.0)), 5.741, 0.001);
    EXPECT_NEAR(r0_closed_form(cv, ControlLevel(0.0)), 2.3961, 5e-4);
}

TEST(R0ClosedForm, QuadraticInBitingRate)
{
    const auto p2 = with([](ParamValues& v) { v.B *= 2; });
    EXPECT_NEAR(r0_squared_closed_form(p2, ControlLevel(0.05)) / r0_squared_closed_form(cv, ControlLevel(0.05)), 4.0,
                1e-12);
}

TEST(R0Routes, AgreeOnRandomDraws)
{
    ParamSampler gen(32);
    for (int i = 0; i < 500; ++i) {
        const auto d = gen.viable();
        const ModelParams p(d.values);
        const ControlLevel c(d.c);
        EXPECT_LT(rel_diff(r0_spectral(p, c), r0_closed_form(p, c)), 1e-10);
    }
}

TEST(R0Factors, ProductIsR0Squared)
{
    for (double c : {0.0, 0.1, 0.3}) {
        const R0Factors f = r0_factors(cv, ControlLevel(c));
        EXPECT_LT(rel_diff(f.R_hm * f.R_mh, r0_squared_closed_form(cv, ControlLevel(c))), 1e-12);
    }
    ParamSampler gen(33);
    for (int i = 0; i < 200; ++i) {
        const auto d = gen.viable();
        const ModelParams p(d.values);
        const R0Factors f = r0_factors(p, ControlLevel(d.c));
        EXPECT_LT(rel_diff(f.R_hm * f.R_mh, r0_squared_closed_form(p, ControlLevel(d.c))), 1e-12);
    }
}

TEST(R0Factors, LegsVanishWithTheirProbability)
{
    const auto p = with([](ParamValues& v) { v.beta_hm = 0.0; });
    EXPECT_EQ(r0_factors(p, ControlLevel(0.0)).R_hm, 0.0);
    EXPECT_GT(r0_factors(p, ControlLevel(0.0)).R_mh, 0.0);
}

TEST(R0Factors, MosquitoLegDecreasesWithControl)
{
    // R_mh = B beta_mh eta_m / ((c + mu_m)(c + eta_m + mu_m)) at S_h = N_h
    double prev = r0_factors(cv, ControlLevel(0.0)).R_mh;
    EXPECT_DOUBLE_EQ(prev, 0.375 * (1.0 / 11) / ((1.0 / 11) * (2.0 / 11)));
    for (int i = 1; i <= 100; ++i) {
        const double c = 0.01 * i;
        const double cur = r0_factors(cv, ControlLevel(c)).R_mh;
        EXPECT_NEAR(cur, 0.375 * cv.eta_m() / ((c + cv.mu_m()) * (c + cv.eta_m() + cv.mu_m())), 1e-14);
        EXPECT_LT(cur, prev);
        prev = cur;
    }
}

TEST(R0Profile, StrictlyDecreasingWithSingleCrossing)
{
    double prev = r0_closed_form(cv, ControlLevel(0.0));
    int crossings = 0;
    for (int i = 1; i <= 1000; ++i) {
        const double c = i / 1000.0;
        const double cur = r0_closed_form(cv, ControlLevel(c));
        EXPECT_LT(cur, prev) << c;
        crossings += (prev - 1.0) * (cur - 1.0) < 0.0;
        prev = cur;
    }
    EXPECT_EQ(crossings, 1);
}
