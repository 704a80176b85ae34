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

#include "irsifc/driver.hpp"
#include "irsifc/reflectopt.hpp"
#include "test_helpers.hpp"

using namespace irsifc;

TEST_CASE("build_lift: zero beam, zero cascade, stacking layout") {
    auto cs = testutil::random_channels(3, 2, 2, 2, 1.0, 1.0);
    std::vector<CVec> w(2, CVec::Zero(2));
    auto lift = build_lift(cs, w);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j) REQUIRE(lift.b[k][j].norm() == 0.0);

    StreamRng rng(5, "lift");
    w = {testutil::random_cvec(rng, 2), testutil::random_cvec(rng, 2)};
    auto bare = strip_irs(cs);
    auto lift2 = build_lift(bare, w);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j) {
            const CVec& b = lift2.b[k][j];
            REQUIRE(b.segment(1, 4).norm() == 0.0);
            const cplx a = bare.direct[k][j].adjoint() * w[j];
            // |b^H vbar|^2 = |a|^2 for any unit-modulus vbar when the
            // cascaded part vanishes.
            CVec vbar = CVec::Ones(5);
            REQUIRE(std::abs(std::norm(cplx(vbar.adjoint() * b)) - std::norm(a)) <=
                    1e-12 * (1.0 + std::norm(a)));
        }
}

TEST_CASE("build_lift: received gain through the lift matches the rate module") {
    StreamRng rng(7, "liftrate");
    for (int rep = 0; rep < 20; ++rep) {
        auto cs = testutil::random_channels(1200 + rep, 2, 3, 2, 0.7, 1.2);
        std::vector<CVec> w{testutil::random_cvec(rng, 3), testutil::random_cvec(rng, 3)};
        auto lift = build_lift(cs, w);
        std::vector<CVec> v{testutil::random_unit_modulus(rng, 2),
                            testutil::random_unit_modulus(rng, 2)};
        CVec vbar(5);
        vbar << cplx(1, 0), v[0], v[1];
        BeamformingState st;
        st.tx = w;
        st.reflect = v;
        for (int k = 0; k < 2; ++k) {
            // Amplitudes match Eq.-level evaluation.
            const cplx via_lift = vbar.adjoint() * lift.b[k][k];
            const cplx via_rate = effective_channel(cs, v, k, k).adjoint() * w[k];
            REQUIRE(std::abs(via_lift - via_rate) <= 1e-12 * (1.0 + std::abs(via_rate)));
        }
        // Profile score through the lift equals the rate-module value.
        RateProfile zeta;
        zeta.weights = RVec(2);
        zeta.weights << 0.35, 0.65;
        const double s_lift = profile_score(lift, zeta, vbar);
        const RVec rates = all_rates(cs, st);
        const double s_rate =
            std::min(rates(0) / zeta.weights(0), rates(1) / zeta.weights(1));
        REQUIRE(std::abs(s_lift - s_rate) <= 1e-10 * (1.0 + std::abs(s_rate)));
    }
}

TEST_CASE("project_unit_modulus: contract") {
    StreamRng rng(9, "proj");
    for (int rep = 0; rep < 20; ++rep) {
        CVec x = testutil::random_cvec(rng, 6);
        if (rep % 5 == 0) x(3) = cplx(0, 0);  // zero entry -> phase 0
        const CVec v = project_unit_modulus(x);
        REQUIRE(v(0) == cplx(1.0, 0.0));
        for (int m = 0; m < 6; ++m) REQUIRE(std::abs(std::abs(v(m)) - 1.0) <= 1e-12);
        if (rep % 5 == 0) {
            // The zero entry keeps the rotated global phase only.
            REQUIRE(std::abs(v(3) - std::conj(x(0) / std::abs(x(0)))) <= 1e-12);
        }
    }
}

TEST_CASE("gaussian_randomize: rank-1 covariance reproduces its vector") {
    StreamRng rng(11, "rank1");
    auto cs = testutil::random_channels(21, 1, 2, 3, 1.0, 1.0);
    std::vector<CVec> w{testutil::random_cvec(rng, 2)};
    auto lift = build_lift(cs, w);
    RateProfile zeta;
    zeta.weights = RVec::Ones(1);

    const CVec vbar_true = project_unit_modulus(testutil::random_cvec(rng, 4));
    const CMat V = vbar_true * vbar_true.adjoint();
    StreamRng rrng(99, "draws");
    // The stabilizing ridge on V perturbs samples at the 1e-6 scale, so the
    // recovered vector matches up to that.
    const CVec got = gaussian_randomize(V, lift, zeta, 50, rrng);
    REQUIRE((got - vbar_true).norm() < 1e-4);
    const double s_got = profile_score(lift, zeta, got);
    const double s_true = profile_score(lift, zeta, vbar_true);
    REQUIRE(std::abs(s_got - s_true) < 1e-5 * (1.0 + std::abs(s_true)));

    // Eigenvector extraction agrees with randomization on rank-1 inputs.
    Eigen::SelfAdjointEigenSolver<CMat> es(V);
    CVec eig_cand =
        project_unit_modulus(es.eigenvectors().col(3) * std::sqrt(es.eigenvalues()(3)));
    REQUIRE(std::abs(profile_score(lift, zeta, eig_cand) - s_got) <
            1e-5 * (1.0 + std::abs(s_got)));
}

TEST_CASE("gaussian_randomize: nested sampling never lowers the best score") {
    StreamRng rng(13, "nested");
    auto cs = testutil::random_channels(23, 2, 2, 2, 1.0, 1.0);
    std::vector<CVec> w{testutil::random_cvec(rng, 2), testutil::random_cvec(rng, 2)};
    auto lift = build_lift(cs, w);
    RateProfile zeta;
    zeta.weights = RVec(2);
    zeta.weights << 0.5, 0.5;
    const CMat V = CMat::Identity(5, 5);
    double prev = -1.0;
    for (int n_rand : {10, 50, 250}) {
        StreamRng draws(7, "draws");  // same stream: sample sets are nested
        const CVec cand = gaussian_randomize(V, lift, zeta, n_rand, draws);
        const double score = profile_score(lift, zeta, cand);
        REQUIRE(score >= prev - 1e-12);
        prev = score;
    }
}

TEST_CASE("max_rate_reflect: K=1 phase-alignment analytic optimum") {
    for (int rep = 0; rep < 4; ++rep) {
        auto cs = testutil::random_channels(1300 + rep, 1, 2, 2, 1.0, 1.0);
        StreamRng rng(rep, "w");
        std::vector<CVec> w{mrt(cs, {CVec::Ones(2)}, 0)};
        auto lift = build_lift(cs, w);
        RateProfile zeta;
        zeta.weights = RVec::Ones(1);
        // max |vbar^H b| over unit modulus = sum of entry magnitudes.
        double amp = 0.0;
        for (int m = 0; m < 3; ++m) amp += std::abs(lift.b[0][0](m));
        const double R_true = std::log2(1.0 + amp * amp / cs.config.sigma2);

        // 64-points-per-element grid oracle over the two free phases.
        double grid_best = 0.0;
        for (int i1 = 0; i1 < 64; ++i1)
            for (int i2 = 0; i2 < 64; ++i2) {
                CVec vbar(3);
                vbar << cplx(1, 0), std::polar(1.0, i1 * 2 * kPi / 64),
                    std::polar(1.0, i2 * 2 * kPi / 64);
                grid_best = std::max(grid_best, profile_score(lift, zeta, vbar));
            }

        ReflectOptions opt;
        opt.n_rand = 500;
        opt.seed = 101 + rep;
        auto res = max_rate_reflect(cs, w, zeta, R_true + 0.5, opt);
        REQUIRE(res.certified <= R_true + 1e-9);
        REQUIRE(res.certified >= grid_best - 2e-3);
        REQUIRE(res.R <= res.certified + 1e-9);
        // Returned coefficients are exactly unit modulus.
        BeamformingState st;
        st.tx = w;
        st.reflect = res.reflect;
        REQUIRE(st.valid(cs.config, 1e-12));
    }
}

TEST_CASE("max_rate_reflect: accepted probes meet their target; relaxation dominates") {
    auto cs = testutil::random_channels(1400, 2, 2, 2, 0.8, 1.0);
    StreamRng rng(3, "w2");
    std::vector<CVec> w{testutil::random_cvec(rng, 2), testutil::random_cvec(rng, 2)};
    // Scale inside the power budget.
    for (auto& wi : w) wi *= 0.9 / wi.norm();
    RateProfile zeta;
    zeta.weights = RVec(2);
    zeta.weights << 0.5, 0.5;
    ReflectOptions opt;
    opt.seed = 5;
    auto res = max_rate_reflect(cs, w, zeta, 12.0, opt);
    REQUIRE(res.probes > 0);
    bool any_accepted = false;
    for (const auto& pr : res.trace) {
        if (pr.accepted) {
            any_accepted = true;
            REQUIRE(pr.relaxed_feasible);
            REQUIRE(pr.recovered_score >= pr.R - 1e-9);
        }
    }
    REQUIRE(any_accepted);
    // Certified value re-validated end to end.
    BeamformingState st;
    st.tx = w;
    st.reflect = res.reflect;
    const RVec rates = all_rates(cs, st);
    const double score = std::min(rates(0) / 0.5, rates(1) / 0.5);
    REQUIRE(std::abs(score - res.certified) <= 1e-9 * (1.0 + score));
    REQUIRE(res.certified >= res.R - 1e-9);

    // Relaxation dominance: the relaxed SDP is feasible at the certified
    // value (the rank-1 lift of the recovered vector is a witness).
    auto lift = build_lift(cs, w);
    auto sdp = build_sdp_problem(lift, zeta, res.certified - 1e-9);
    auto verdict = conic::solve_sdp_feasibility(sdp);
    REQUIRE(verdict.feasible());
}

TEST_CASE("max_rate_reflect: full-scale randomization constant") {
    REQUIRE(kFullScaleRandomizations == 3000);
    REQUIRE(BcdOptions::full_scale().n_rand == 3000);
}
