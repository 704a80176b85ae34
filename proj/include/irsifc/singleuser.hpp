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
// Single-user maximum-rate corner point: with every other transmitter
// silent, the optimal transmit beamformer is MRT on the effective channel,
// and the receive SNR depends on the reflective coefficients alone. Each
// reflective element has a closed-form optimal phase with the others held
// fixed, so the phases are optimized by coordinate ascent.

#pragma once

#include <vector>

#include "irsifc/rate.hpp"

namespace irsifc {

/// Sum of direct channel and all reflected contributions for the own link
/// of user k: direct[k][k] + sum_i cascaded[k][i][k]^H reflect[i].
inline CVec own_effective_channel(const ChannelSet& cs, const std::vector<CVec>& reflect, int k) {
    return effective_channel(cs, reflect, k, k);
}

/// Maximum ratio transmission at full power on the effective channel.
/// Throws DegenerateInstance if the effective channel is zero.
inline CVec mrt(const ChannelSet& cs, const std::vector<CVec>& reflect, int k) {
    CVec g = own_effective_channel(cs, reflect, k);
    double norm = g.norm();
    if (norm == 0.0) throw DegenerateInstance("mrt: zero effective channel");
    return std::sqrt(cs.config.P(k)) / norm * g;
}

/// Receive SNR of user k under MRT: (P_k / sigma^2) * ||g||^2.
inline double snr_objective(const ChannelSet& cs, const std::vector<CVec>& reflect, int k) {
    return cs.config.P(k) / cs.config.sigma2 *
           own_effective_channel(cs, reflect, k).squaredNorm();
}

/// Optimal phase for one reflective element: maximizes
/// Re{ e^{j phi} g_rest^H r } at phi = -arg(g_rest^H r). Returns a value
/// in [0, 2*pi); 0 when the inner product vanishes.
inline double phase_update(const CVec& g_rest, const CVec& r) {
    const cplx ip = g_rest.adjoint() * r;
    if (ip == cplx(0.0, 0.0)) return 0.0;
    double phi = -std::arg(ip);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi) phi = 0.0;
    return phi;
}

struct CoordinateAscentReport {
    std::vector<CVec> reflect;       // optimized reflective coefficients
    std::vector<double> snr_trace;   // SNR after init and after each sweep
    int sweeps = 0;
    bool converged = false;
};

/// Coordinate ascent over all reflective elements of all IRSs for user k.
/// Sweeps elements in lexicographic (irs, element) order; each update is the
/// closed-form phase maximizer, so the SNR never decreases. Stops when one
/// full sweep gains less than eps in SNR.
inline CoordinateAscentReport coordinate_ascent(const ChannelSet& cs, int k,
                                                const std::vector<CVec>& reflect_init,
                                                double eps = 1e-8, int max_sweeps = 500) {
    const int K = cs.config.K, N = cs.config.N;
    CoordinateAscentReport rep;
    rep.reflect = reflect_init;

    // Columns of cascaded[k][i][k]^H, one per reflective element.
    std::vector<CMat> contrib(K);
    for (int i = 0; i < K; ++i) contrib[i] = cs.cascaded[k][i][k].adjoint();

    CVec total = own_effective_channel(cs, rep.reflect, k);
    const double scale = cs.config.P(k) / cs.config.sigma2;
    rep.snr_trace.push_back(scale * total.squaredNorm());

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int i = 0; i < K; ++i) {
            for (int n = 0; n < N; ++n) {
                const CVec r = contrib[i].col(n);
                const CVec rest = total - r * rep.reflect[i](n);
                const double phi = phase_update(rest, r);
                rep.reflect[i](n) = std::polar(1.0, phi);
                total = rest + r * rep.reflect[i](n);
            }
        }
        rep.sweeps = sweep + 1;
        const double snr = scale * total.squaredNorm();
        const double gain = snr - rep.snr_trace.back();
        rep.snr_trace.push_back(snr);
        if (gain < eps) {
            rep.converged = true;
            break;
        }
    }
    return rep;
}

}  // namespace irsifc
