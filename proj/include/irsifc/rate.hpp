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

#include <cmath>
#include <vector>

#include "irsifc/channel.hpp"
#include "irsifc/common.hpp"

namespace irsifc {

/// Active transmit beamformers plus passive reflective coefficients.
/// tx[j] has length M with ||tx[j]||^2 <= P_j; reflect[i] has length N
/// with unit-modulus entries.
struct BeamformingState {
    std::vector<CVec> tx;
    std::vector<CVec> reflect;

    static BeamformingState zeros(const SystemConfig& cfg) {
        BeamformingState st;
        st.tx.assign(cfg.K, CVec::Zero(cfg.M));
        st.reflect.assign(cfg.K, CVec::Ones(cfg.N));
        return st;
    }

    /// Checks the power and unit-modulus invariants.
    bool valid(const SystemConfig& cfg, double tol = 1e-9) const {
        if (tx.size() != size_t(cfg.K) || reflect.size() != size_t(cfg.K)) return false;
        for (int j = 0; j < cfg.K; ++j)
            if (tx[j].squaredNorm() > cfg.P(j) + tol) return false;
        for (const auto& v : reflect)
            for (Eigen::Index n = 0; n < v.size(); ++n)
                if (std::abs(std::abs(v(n)) - 1.0) > tol) return false;
        return true;
    }
};

/// Rate-profile weights: zeta(k) >= 0, sum == 1.
struct RateProfile {
    RVec weights;

    void validate() const {
        if (weights.size() < 1) throw InvalidInput("RateProfile: empty weight vector");
        double sum = 0.0;
        for (Eigen::Index k = 0; k < weights.size(); ++k) {
            if (weights(k) < 0.0) throw InvalidInput("RateProfile: weights must be nonnegative");
            sum += weights(k);
        }
        if (std::abs(sum - 1.0) > 1e-12) throw InvalidInput("RateProfile: weights must sum to 1");
    }
};

/// Effective transmitter j -> receiver k channel including every reflected
/// path: direct[k][j] + sum_i cascaded[k][i][j]^H reflect[i].
inline CVec effective_channel(const ChannelSet& cs, const std::vector<CVec>& reflect, int k, int j) {
    CVec g = cs.direct[k][j];
    for (int i = 0; i < cs.config.K; ++i) g += cs.cascaded[k][i][j].adjoint() * reflect[i];
    return g;
}

inline double sinr(const ChannelSet& cs, const BeamformingState& state, int k) {
    const cplx own = effective_channel(cs, state.reflect, k, k).adjoint() * state.tx[k];
    double num = std::norm(own);
    if (num == 0.0) return 0.0;
    double den = cs.config.sigma2;
    for (int j = 0; j < cs.config.K; ++j) {
        if (j == k) continue;
        const cplx xj = effective_channel(cs, state.reflect, k, j).adjoint() * state.tx[j];
        den += std::norm(xj);
    }
    return num / den;
}

/// Achievable rate in bits/s/Hz with interference treated as noise.
inline double achievable_rate(const ChannelSet& cs, const BeamformingState& state, int k) {
    return std::log2(1.0 + sinr(cs, state, k));
}

inline RVec all_rates(const ChannelSet& cs, const BeamformingState& state) {
    RVec r(cs.config.K);
    for (int k = 0; k < cs.config.K; ++k) r(k) = achievable_rate(cs, state, k);
    return r;
}

/// True iff rates(k) >= zeta(k) * R - tol for every user.
inline bool check_profile(const RVec& rates, const RateProfile& profile, double R,
                          double tol = kConstraintTol) {
    if (rates.size() != profile.weights.size())
        throw InvalidInput("check_profile: rate/weight length mismatch");
    for (Eigen::Index k = 0; k < rates.size(); ++k)
        if (rates(k) < profile.weights(k) * R - tol) return false;
    return true;
}

}  // namespace irsifc
