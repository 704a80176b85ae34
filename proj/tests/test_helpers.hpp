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

#pragma once

#include "irsifc/channel.hpp"
#include "irsifc/conic/cones.hpp"
#include "irsifc/rate.hpp"
#include "irsifc/rng.hpp"

namespace testutil {

using namespace irsifc;

/// Channel set with unit-variance entries on every link (path-loss exponents
/// zero), handy for algebraic tests.
inline ChannelSet random_channels(uint64_t seed, int K, int M, int N, double sigma2 = 1.0,
                                  double P = 1.0) {
    SystemConfig cfg;
    cfg.K = K;
    cfg.M = M;
    cfg.N = N;
    cfg.P = RVec::Constant(K, P);
    cfg.sigma2 = sigma2;
    cfg.seed = seed;
    Geometry geom;
    for (int j = 0; j < K; ++j) geom.tx.emplace_back(j, 1.0);
    for (int k = 0; k < K; ++k) geom.rx.emplace_back(k, 0.0);
    for (int i = 0; i < K; ++i) geom.irs.emplace_back(i + 0.3, 0.5);
    PathLossModel plm;
    plm.C0 = 1.0;
    plm.beta_direct = plm.beta_tx_irs = plm.beta_irs_rx = 0.0;
    return generate_channels(cfg, geom, plm);
}

inline CVec random_cvec(StreamRng& rng, int n, double var = 1.0) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.cnormal(var);
    return v;
}

inline CMat random_cmat(StreamRng& rng, int r, int c, double var = 1.0) {
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rng.cnormal(var);
    return m;
}

inline CVec random_unit_modulus(StreamRng& rng, int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    return v;
}

/// Largest profile-feasible rate target for M = 1, K = 2 by grid search over
/// transmit powers (gains taken from the effective channels at the given
/// reflective coefficients). At the optimum at least one transmitter is at
/// full power (scaling both powers up raises every SINR), so only the two
/// boundary faces of the power box need searching; each face is refined in
/// stages.
inline double grid_max_rate_m1k2(const ChannelSet& cs, const RVec& zeta,
                                 const std::vector<CVec>& reflect, int coarse = 1024,
                                 int stages = 3) {
    const double s2 = cs.config.sigma2;
    double g[2][2];
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            g[k][j] = std::norm(effective_channel(cs, reflect, k, j)(0));

    auto profile_rate = [&](double p0, double p1) {
        double worst = conic::kInf;
        const double sinr0 = p0 * g[0][0] / (p1 * g[0][1] + s2);
        const double sinr1 = p1 * g[1][1] / (p0 * g[1][0] + s2);
        if (zeta(0) > 0.0) worst = std::min(worst, std::log2(1.0 + sinr0) / zeta(0));
        if (zeta(1) > 0.0) worst = std::min(worst, std::log2(1.0 + sinr1) / zeta(1));
        return worst;
    };

    auto search_face = [&](bool fix_first) {
        const double P_fixed = cs.config.P(fix_first ? 0 : 1);
        double lo = 0.0, hi = cs.config.P(fix_first ? 1 : 0);
        double best = -conic::kInf, best_p = 0.0;
        for (int stage = 0; stage < stages; ++stage) {
            const double step = (hi - lo) / coarse;
            for (int i = 0; i <= coarse; ++i) {
                const double p = lo + i * step;
                const double val =
                    fix_first ? profile_rate(P_fixed, p) : profile_rate(p, P_fixed);
                if (val > best) {
                    best = val;
                    best_p = p;
                }
            }
            const double w = 2.0 * step;
            lo = std::max(0.0, best_p - w);
            hi = std::min(cs.config.P(fix_first ? 1 : 0), best_p + w);
        }
        return best;
    };

    return std::max(search_face(true), search_face(false));
}

}  // namespace testutil
