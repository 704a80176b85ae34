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
//
// Reflective-beamforming subproblem. With transmit beamformers fixed, each
// received amplitude is linear in the stacked reflective vector
// vbar = [1; v_1; ...; v_K]:
//
//   (h_kj^H + sum_i v_i^H Gamma_kij) w_j = vbar^H b_kj,
//   b_kj = [h_kj^H w_j; Gamma_k1j w_j; ...; Gamma_kKj w_j].
//
// Lifting V = vbar vbar^H turns the SINR constraints into trace-linear
// inequalities over unit-diagonal PSD V (the rank-1 condition is dropped).
// A rate target is accepted only when a unit-modulus vector recovered from
// the relaxed solution (dominant eigenvector, else Gaussian randomization)
// actually meets it.

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "irsifc/conic/feasibility.hpp"
#include "irsifc/rate.hpp"
#include "irsifc/rng.hpp"

namespace irsifc {

/// Per-pair stacked gain vectors b_kj of length K*N + 1.
struct ReflectiveLift {
    int K = 0, N = 0;
    double sigma2 = 1.0;
    std::vector<std::vector<CVec>> b;  // [receiver k][transmitter j]
};

inline ReflectiveLift build_lift(const ChannelSet& cs, const std::vector<CVec>& w) {
    const int K = cs.config.K, N = cs.config.N;
    ReflectiveLift lift;
    lift.K = K;
    lift.N = N;
    lift.sigma2 = cs.config.sigma2;
    lift.b.assign(K, std::vector<CVec>(K));
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < K; ++j) {
            CVec bkj(K * N + 1);
            bkj(0) = cs.direct[k][j].adjoint() * w[j];
            for (int i = 0; i < K; ++i)
                bkj.segment(1 + i * N, N) = cs.cascaded[k][i][j] * w[j];
            lift.b[k][j] = std::move(bkj);
        }
    return lift;
}

/// Splits a stacked unit-modulus vbar (first entry 1) into per-IRS vectors.
inline std::vector<CVec> unstack_reflect(const CVec& vbar, int K, int N) {
    std::vector<CVec> v(K);
    for (int i = 0; i < K; ++i) v[i] = vbar.segment(1 + i * N, N);
    return v;
}

/// min over active users of R_k / zeta_k evaluated through the lift
/// (identical to the rate module's value for unit-modulus vbar).
inline double profile_score(const ReflectiveLift& lift, const RateProfile& zeta,
                            const CVec& vbar) {
    double score = conic::kInf;
    for (int k = 0; k < lift.K; ++k) {
        if (!(zeta.weights(k) > 0.0)) continue;
        const double num = std::norm(cplx(vbar.adjoint() * lift.b[k][k]));
        double den = lift.sigma2;
        for (int j = 0; j < lift.K; ++j) {
            if (j == k) continue;
            den += std::norm(cplx(vbar.adjoint() * lift.b[k][j]));
        }
        score = std::min(score, std::log2(1.0 + num / den) / zeta.weights(k));
    }
    return score;
}

/// Projects a complex vector onto per-entry unit modulus and rotates the
/// global phase so the first entry equals exactly 1.
inline CVec project_unit_modulus(const CVec& x) {
    CVec v(x.size());
    for (Eigen::Index m = 0; m < x.size(); ++m) {
        const double mag = std::abs(x(m));
        v(m) = (mag == 0.0) ? cplx(1.0, 0.0) : x(m) / mag;
    }
    v *= std::conj(v(0));
    v(0) = cplx(1.0, 0.0);
    return v;
}

/// Builds the SDP feasibility data of the relaxed subproblem at rate target R.
inline conic::SdpFeasibilityProblem build_sdp_problem(const ReflectiveLift& lift,
                                                      const RateProfile& zeta, double R) {
    const int n = lift.K * lift.N + 1;
    conic::SdpFeasibilityProblem p;
    p.n = n;
    if (R <= 0.0) return p;  // no constraints: trivially feasible
    for (int k = 0; k < lift.K; ++k) {
        if (!(zeta.weights(k) > 0.0)) continue;
        const double target = exp2m1(zeta.weights(k) * R);
        conic::TraceConstraint tc;
        tc.A = (lift.b[k][k] * lift.b[k][k].adjoint()) / target;
        tc.scale = lift.sigma2;
        for (int j = 0; j < lift.K; ++j) {
            if (j == k) continue;
            tc.A -= lift.b[k][j] * lift.b[k][j].adjoint();
            tc.scale += lift.b[k][j].squaredNorm();
        }
        tc.scale += lift.b[k][k].squaredNorm();
        tc.rhs = lift.sigma2;
        p.constraints.push_back(std::move(tc));
    }
    return p;
}

/// Draws n_rand samples from CN(0, V), projects each to unit modulus and
/// returns the best-scoring candidate (deterministic in the rng state; ties
/// break toward the earliest sample).
inline CVec gaussian_randomize(const CMat& V, const ReflectiveLift& lift,
                               const RateProfile& zeta, int n_rand, StreamRng& rng) {
    const int n = static_cast<int>(V.rows());
    CMat Vr = V + 1e-12 * CMat::Identity(n, n);
    Eigen::LLT<CMat> llt(Vr);
    for (int attempt = 0; attempt < 3 && llt.info() != Eigen::Success; ++attempt) {
        Vr += 1e-10 * std::pow(100.0, attempt) * CMat::Identity(n, n);
        llt.compute(Vr);
    }
    if (llt.info() != Eigen::Success)
        throw DegenerateInstance("gaussian_randomize: covariance not PSD");
    const CMat L = llt.matrixL();

    CVec best;
    double best_score = -conic::kInf;
    CVec xi(n);
    for (int t = 0; t < n_rand; ++t) {
        for (int m = 0; m < n; ++m) xi(m) = rng.cnormal(1.0);
        const CVec cand = project_unit_modulus(L * xi);
        const double score = profile_score(lift, zeta, cand);
        if (score > best_score) {
            best_score = score;
            best = cand;
        }
    }
    return best;
}

struct ReflectOptions {
    double eps_bisect = 1e-4;
    double feas_tol = 1e-7;
    int n_rand = 200;                 // desk-scale default
    double rank1_ratio = 1e-8;        // second/first eigenvalue threshold
    uint64_t seed = 0;
    conic::ConeSettings solver;
};

/// Gaussian randomization count the reference setup uses for full-scale runs.
inline constexpr int kFullScaleRandomizations = 3000;

struct ReflectProbe {
    double R = 0.0;
    bool relaxed_feasible = false;
    bool failure = false;
    double relaxed_margin = 0.0;
    double recovered_score = std::numeric_limits<double>::quiet_NaN();
    bool accepted = false;
};

struct ReflectResult {
    double R = 0.0;               // bisection lower bound (last accepted target)
    double certified = 0.0;       // true profile score of the returned vector
    std::vector<CVec> reflect;    // per-IRS reflective coefficients
    CVec vbar;
    int probes = 0;
    int failures = 0;
    std::vector<ReflectProbe> trace;
};

/// Bisection over R where a probe is accepted only if the relaxed SDP is
/// feasible AND a recovered unit-modulus vector meets the target.
inline ReflectResult max_rate_reflect(const ChannelSet& cs, const std::vector<CVec>& w,
                                      const RateProfile& zeta, double R_max,
                                      const ReflectOptions& opt = {}, double R_lo = 0.0,
                                      std::vector<CVec> v_lo = {}) {
    const int K = cs.config.K, N = cs.config.N;
    if (v_lo.empty()) v_lo.assign(K, CVec::Ones(N));
    const ReflectiveLift lift = build_lift(cs, w);

    ReflectResult res;
    res.R = R_lo;
    res.reflect = std::move(v_lo);
    res.vbar = CVec::Ones(K * N + 1);
    for (int i = 0; i < K; ++i) res.vbar.segment(1 + i * N, N) = res.reflect[i];

    double lo = R_lo, hi = std::max(R_max, R_lo);
    int probe_idx = 0;
    while (hi - lo > opt.eps_bisect) {
        const double R = 0.5 * (lo + hi);
        auto sdp = build_sdp_problem(lift, zeta, R);
        auto verdict = conic::solve_sdp_feasibility(sdp, opt.feas_tol, opt.solver);
        ++res.probes;
        ReflectProbe probe;
        probe.R = R;
        probe.relaxed_margin = verdict.margin;
        probe.relaxed_feasible = verdict.feasible();
        probe.failure = verdict.status == conic::FeasStatus::kNumericalFailure;
        if (probe.failure) ++res.failures;

        if (verdict.feasible()) {
            const CMat& V = verdict.witness->V;
            Eigen::SelfAdjointEigenSolver<CMat> es(V);
            const int nV = static_cast<int>(V.rows());
            const double l1 = es.eigenvalues()(nV - 1);
            const double l2 = nV > 1 ? es.eigenvalues()(nV - 2) : 0.0;
            CVec cand = project_unit_modulus(es.eigenvectors().col(nV - 1) * std::sqrt(std::max(l1, 0.0)));
            double score = profile_score(lift, zeta, cand);
            if (l2 > opt.rank1_ratio * l1) {
                StreamRng rng(opt.seed, "gaussian_randomize/" + std::to_string(probe_idx));
                const CVec rand_cand = gaussian_randomize(V, lift, zeta, opt.n_rand, rng);
                const double rand_score = profile_score(lift, zeta, rand_cand);
                if (rand_score > score) {
                    score = rand_score;
                    cand = rand_cand;
                }
            }
            probe.recovered_score = score;
            if (score >= R - 1e-9) {
                probe.accepted = true;
                lo = R;
                res.R = R;
                res.reflect = unstack_reflect(cand, K, N);
                res.vbar = cand;
            } else {
                hi = R;
            }
        } else {
            hi = R;
        }
        res.trace.push_back(probe);
        ++probe_idx;
    }

    // Certify the returned vector end-to-end through the rate module.
    BeamformingState st;
    st.tx = w;
    st.reflect = res.reflect;
    double cert = conic::kInf;
    const RVec rates = all_rates(cs, st);
    for (int k = 0; k < K; ++k)
        if (zeta.weights(k) > 0.0) cert = std::min(cert, rates(k) / zeta.weights(k));
    res.certified = cert;
    return res;
}

}  // namespace irsifc
