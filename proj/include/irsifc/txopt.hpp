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
// Transmit-beamforming subproblem: with the reflective coefficients fixed,
// the largest rate target R such that every user k can reach zeta_k * R is
// found by bisection over SOC feasibility problems. A user's SINR constraint
//   |g_kk^H w_k|^2 >= (2^{zeta_k R} - 1) (sum_j |g_kj^H w_j|^2 + sigma^2)
// becomes, after rotating w_k so g_kk^H w_k is real nonnegative,
//   Re(g_kk^H w_k) / sqrt(2^{zeta_k R} - 1) >= || [cross gains; sigma] ||.

#pragma once

#include <utility>
#include <vector>

#include "irsifc/conic/feasibility.hpp"
#include "irsifc/rate.hpp"

namespace irsifc {

/// Users with zero weight are silenced (w = 0) and dropped from the
/// constraint set.
inline conic::SocFeasibilityProblem build_soc_problem(const ChannelSet& cs,
                                                      const std::vector<CVec>& reflect,
                                                      const RateProfile& zeta, double R) {
    zeta.validate();
    if (R < 0.0) throw InvalidInput("build_soc_problem: R must be >= 0");
    const int K = cs.config.K;
    conic::SocFeasibilityProblem p;
    p.K = K;
    p.M = cs.config.M;
    p.P = cs.config.P;
    p.sigma = std::sqrt(cs.config.sigma2);

    for (int k = 0; k < K; ++k)
        if (zeta.weights(k) > 0.0) p.active.push_back(k);
    if (p.active.empty() || R == 0.0) {
        p.trivially_feasible = true;
        p.active.clear();  // nothing needs to transmit
        return p;
    }

    for (int k : p.active) {
        conic::SocUserConstraint uc;
        uc.user = k;
        uc.own = effective_channel(cs, reflect, k, k);
        uc.sinr_target = exp2m1(zeta.weights(k) * R);
        if (uc.own.squaredNorm() == 0.0) {
            p.trivially_infeasible = true;
            p.note = "user " + std::to_string(k) + " has zero effective channel";
            return p;
        }
        for (int j : p.active) {
            if (j == k) continue;
            uc.cross.emplace_back(j, effective_channel(cs, reflect, k, j));
        }
        p.users.push_back(std::move(uc));
    }
    return p;
}

struct TxOptions {
    double eps_bisect = 1e-4;
    double feas_tol = 1e-7;
    conic::ConeSettings solver;
};

struct TxProbe {
    double R = 0.0;
    bool feasible = false;
    bool failure = false;
    double margin = 0.0;
};

struct TxResult {
    double R = 0.0;                 // largest certified feasible rate target
    std::vector<CVec> w;            // witness beamformers (length K)
    int probes = 0;
    int failures = 0;               // probes that ended in numerical failure
    std::vector<TxProbe> trace;
};

/// Bisection over R in [R_lo, R_max]. R_lo must be feasible (R_lo = 0 with
/// w = 0 always is); w_lo is its witness. Probes that fail numerically are
/// treated as infeasible and counted.
inline TxResult max_rate_tx(const ChannelSet& cs, const std::vector<CVec>& reflect,
                            const RateProfile& zeta, double R_max, const TxOptions& opt = {},
                            double R_lo = 0.0, std::vector<CVec> w_lo = {}) {
    TxResult res;
    if (w_lo.empty()) w_lo.assign(cs.config.K, CVec::Zero(cs.config.M));
    res.R = R_lo;
    res.w = std::move(w_lo);

    double lo = R_lo, hi = std::max(R_max, R_lo);
    while (hi - lo > opt.eps_bisect) {
        const double R = 0.5 * (lo + hi);
        auto p = build_soc_problem(cs, reflect, zeta, R);
        auto verdict = conic::solve_soc_feasibility(p, opt.feas_tol, opt.solver);
        ++res.probes;
        TxProbe probe{R, verdict.feasible(), verdict.status == conic::FeasStatus::kNumericalFailure,
                      verdict.margin};
        res.trace.push_back(probe);
        if (probe.failure) ++res.failures;
        if (verdict.feasible()) {
            lo = R;
            res.R = R;
            res.w = verdict.witness->w;
        } else {
            hi = R;
        }
    }
    return res;
}

/// Rotates each beamformer so its own effective gain is real nonnegative.
/// Rates are invariant under these per-user phase rotations.
inline std::vector<CVec> normalize_phases(const ChannelSet& cs, const std::vector<CVec>& reflect,
                                          const std::vector<CVec>& w) {
    std::vector<CVec> out = w;
    for (int k = 0; k < cs.config.K; ++k) {
        const cplx own = effective_channel(cs, reflect, k, k).adjoint() * out[k];
        if (own != cplx(0.0, 0.0)) out[k] *= std::polar(1.0, -std::arg(own));
    }
    return out;
}

}  // namespace irsifc
