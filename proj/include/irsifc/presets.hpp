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

#include <string>

#include "irsifc/channel.hpp"

namespace irsifc {

struct ScenarioPreset {
    SystemConfig config;
    Geometry geom;
    PathLossModel plm;
};

namespace detail {

inline ScenarioPreset two_user_square(uint64_t seed, int M, int N, double side, double C0,
                                      double snr_db) {
    ScenarioPreset sp;
    sp.config.K = 2;
    sp.config.M = M;
    sp.config.N = N;
    sp.config.P = RVec::Ones(2);
    sp.config.sigma2 = 1.0 / std::pow(10.0, snr_db / 10.0);  // transmit SNR = P/sigma2
    sp.config.seed = seed;

    sp.geom.tx = {Vec2(0.0, side), Vec2(side, side)};
    sp.geom.rx = {Vec2(0.0, 0.0), Vec2(side, 0.0)};
    // IRSs dropped uniformly inside the square spanned by the endpoints.
    StreamRng rng(seed, "irs_pos");
    for (int i = 0; i < 2; ++i)
        sp.geom.irs.emplace_back(rng.uniform(0.0, side), rng.uniform(0.0, side));

    sp.plm.C0 = C0;
    sp.plm.d0 = 1.0;
    sp.plm.beta_direct = 3.6;
    sp.plm.beta_tx_irs = 2.0;
    sp.plm.beta_irs_rx = 2.5;
    return sp;
}

}  // namespace detail

/// Small two-user scenario sized for fast runs: K=2, M=4, N=8 in a 5 m
/// square with unit reference gain and 20 dB transmit SNR.
inline ScenarioPreset desk_preset(uint64_t seed) {
    return detail::two_user_square(seed, 4, 8, 5.0, 1.0, 20.0);
}

/// Full-scale two-user scenario: K=2, M=32, N=256, 50 m square, -30 dB
/// reference gain at 1 m, 20 dB transmit SNR.
inline ScenarioPreset full_preset(uint64_t seed) {
    return detail::two_user_square(seed, 32, 256, 50.0, 1e-3, 20.0);
}

inline ScenarioPreset preset_by_name(const std::string& name, uint64_t seed) {
    if (name == "desk") return desk_preset(seed);
    if (name == "paper") return full_preset(seed);
    throw InvalidInput("unknown preset '" + name + "' (expected 'desk' or 'paper')");
}

inline ChannelSet generate_preset(const ScenarioPreset& sp) {
    return generate_channels(sp.config, sp.geom, sp.plm);
}

}  // namespace irsifc
