// irsifc - beamforming and rate-region toolkit for IRS-aided MISO interference channels
// Copyright (C) 2026 the irsifc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "irsifc/conic/feasibility.hpp"
#include "irsifc/txopt.hpp"
#include "test_helpers.hpp"

using namespace irsifc;
using namespace irsifc::conic;

namespace {

SocFeasibilityProblem single_user_problem(const CVec& g, double P, double sigma2, double R) {
    SocFeasibilityProblem p;
    p.K = 1;
    p.M = static_cast<int>(g.size());
    p.P = RVec::Constant(1, P);
    p.sigma = std::sqrt(sigma2);
    p.active = {0};
    SocUserConstraint uc;
    uc.user = 0;
    uc.own = g;
    uc.sinr_target = exp2m1(R);
    p.users.push_back(std::move(uc));
    return p;
}

}  // namespace

TEST_CASE("SOC feasibility: single-user closed-form boundary") {
    // g = [1, 0], P = 1, sigma = 1: feasible iff R <= log2(1 + 1) = 1.
    CVec g(2);
    g << cplx(1, 0), cplx(0, 0);
    for (double dR : {-0.05, -0.01, 0.01, 0.05}) {
        auto p = single_user_problem(g, 1.0, 1.0, 1.0 + dR);
        auto v = solve_soc_feasibility(p);
        REQUIRE(v.status != FeasStatus::kNumericalFailure);
        REQUIRE(v.feasible() == (dR < 0));
    }

    // Random instances: boundary at log2(1 + P ||g||^2 / sigma2).
    StreamRng rng(3, "socbound");
    for (int rep = 0; rep < 20; ++rep) {
        const CVec gr = testutil::random_cvec(rng, 3);
        const double P = 0.5 + rng.uniform(), s2 = 0.2 + rng.uniform();
        const double Rstar = std::log2(1.0 + P * gr.squaredNorm() / s2);
        auto lo = solve_soc_feasibility(single_user_problem(gr, P, s2, Rstar - 1e-3));
        auto hi = solve_soc_feasibility(single_user_problem(gr, P, s2, Rstar + 1e-3));
        REQUIRE(lo.feasible());
        REQUIRE_FALSE(hi.feasible());
        // Feasible witness satisfies the original constraints.
        const double scale = std::max({1.0, std::sqrt(P), std::sqrt(s2)});
        REQUIRE(soc_witness_slack(single_user_problem(gr, P, s2, Rstar - 1e-3),
                                  *lo.witness) >= -10.0 * 1e-7 * scale);
    }
}

TEST_CASE("SOC feasibility: empty user set is vacuously feasible") {
    SocFeasibilityProblem p;
    p.K = 2;
    p.M = 3;
    p.P = RVec::Ones(2);
    p.sigma = 1.0;
    auto v = solve_soc_feasibility(p);
    REQUIRE(v.feasible());
    REQUIRE(v.margin == kInf);
    REQUIRE(v.witness->w[0].norm() == 0.0);
}

TEST_CASE("SOC feasibility: margin decreases as the target tightens") {
    StreamRng rng(5, "socmono");
    auto cs = testutil::random_channels(50, 2, 2, 1, 1.0, 1.0);
    std::vector<CVec> reflect(2, CVec::Ones(1));
    RateProfile zeta;
    zeta.weights = RVec(2);
    zeta.weights << 0.6, 0.4;
    double prev = kInf;
    for (double R : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2}) {
        auto p = build_soc_problem(cs, reflect, zeta, R);
        auto v = solve_soc_feasibility(p);
        REQUIRE(v.status != FeasStatus::kNumericalFailure);
        REQUIRE(v.margin <= prev + 1e-9);
        prev = v.margin;
    }
}

TEST_CASE("SOC feasibility: verdict matches power-grid oracle near the boundary") {
    // M = 1, K = 2 real-power reduction; grid oracle gives R*; probing at
    // R* +/- delta must classify correctly in nearly every instance.
    int agree = 0, total = 0;
    for (int rep = 0; rep < 25; ++rep) {
        auto cs = testutil::random_channels(800 + rep, 2, 1, 1, 0.8, 1.0);
        RateProfile zeta;
        zeta.weights = RVec(2);
        const double z = 0.25 + 0.5 * (rep % 3) * 0.25;
        zeta.weights << z, 1.0 - z;
        std::vector<CVec> reflect(2, CVec::Ones(1));
        const double Rg = testutil::grid_max_rate_m1k2(cs, zeta.weights, reflect);
        const double delta = 5e-3;
        auto lo = solve_soc_feasibility(build_soc_problem(cs, reflect, zeta, Rg - delta));
        auto hi = solve_soc_feasibility(build_soc_problem(cs, reflect, zeta, Rg + delta));
        total += 2;
        agree += lo.feasible() ? 1 : 0;
        agree += hi.feasible() ? 0 : 1;
    }
    REQUIRE(agree >= int(0.99 * total));
}

TEST_CASE("SDP feasibility: no constraints yields the identity witness") {
    SdpFeasibilityProblem p;
    p.n = 4;
    auto v = solve_sdp_feasibility(p);
    REQUIRE(v.feasible());
    REQUIRE((v.witness->V - CMat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("SDP feasibility: 2x2 analytic maximum of a rank-1 trace form") {
    // max Tr(b b^H V) over unit-diagonal PSD V equals (|b1| + |b2|)^2.
    StreamRng rng(7, "sdp2x2");
    for (int rep = 0; rep < 12; ++rep) {
        CVec b = testutil::random_cvec(rng, 2);
        const double peak = std::pow(std::abs(b(0)) + std::abs(b(1)), 2);
        for (double frac : {0.9, 0.99, 1.01, 1.1}) {
            SdpFeasibilityProblem p;
            p.n = 2;
            TraceConstraint tc;
            tc.A = b * b.adjoint();
            tc.rhs = frac * peak;
            tc.scale = std::max(1.0, peak);
            p.constraints.push_back(tc);
            auto v = solve_sdp_feasibility(p);
            REQUIRE(v.status != FeasStatus::kNumericalFailure);
            REQUIRE(v.feasible() == (frac < 1.0));
            if (v.feasible()) {
                // Witness is Hermitian PSD with unit diagonal and satisfies
                // the trace constraint within tolerance.
                const CMat& V = v.witness->V;
                REQUIRE((V - V.adjoint()).norm() < 1e-12);
                for (int d = 0; d < 2; ++d) REQUIRE(std::abs(V(d, d) - 1.0) < 1e-12);
                Eigen::SelfAdjointEigenSolver<CMat> es(V, Eigen::EigenvaluesOnly);
                REQUIRE(es.eigenvalues().minCoeff() >= -1e-7);
                REQUIRE(sdp_witness_slack(p, *v.witness) >= -1e-6);
            }
        }
    }
}

TEST_CASE("SDP feasibility: witness eigenvalues stay above -feas_tol") {
    StreamRng rng(11, "sdpwit");
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 5;
        SdpFeasibilityProblem p;
        p.n = n;
        for (int k = 0; k < 2; ++k) {
            CVec b = testutil::random_cvec(rng, n);
            TraceConstraint tc;
            tc.A = b * b.adjoint();
            // Ask for half of what the fully aligned vector could reach.
            double amax = 0.0;
            for (int i = 0; i < n; ++i) amax += std::abs(b(i));
            tc.rhs = 0.5 * amax * amax;
            tc.scale = std::max(1.0, tc.rhs);
            p.constraints.push_back(std::move(tc));
        }
        auto v = solve_sdp_feasibility(p);
        REQUIRE(v.status != FeasStatus::kNumericalFailure);
        if (v.feasible()) {
            Eigen::SelfAdjointEigenSolver<CMat> es(v.witness->V, Eigen::EigenvaluesOnly);
            REQUIRE(es.eigenvalues().minCoeff() >= -1e-7);
        }
    }
}

TEST_CASE("SDP feasibility: margin decreases as any constraint tightens") {
    StreamRng rng(13, "sdpmono");
    const int n = 4;
    std::vector<CVec> bs;
    for (int j = 0; j < 2; ++j) bs.push_back(testutil::random_cvec(rng, n));
    double prev = kInf;
    for (double rhs = 1.0; rhs < 30.0; rhs *= 1.8) {
        SdpFeasibilityProblem p;
        p.n = n;
        for (const auto& b : bs) {
            TraceConstraint tc;
            tc.A = b * b.adjoint();
            tc.rhs = rhs;
            tc.scale = 10.0;  // fixed normalization across targets
            p.constraints.push_back(tc);
        }
        auto v = solve_sdp_feasibility(p);
        REQUIRE(v.status != FeasStatus::kNumericalFailure);
        REQUIRE(v.margin <= prev + 1e-8);
        prev = v.margin;
    }
}
