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

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irsifc/common.hpp"
#include "irsifc/rng.hpp"

namespace irsifc {

/// Dimensions, power budgets and noise level of one K-pair deployment.
struct SystemConfig {
    int K = 1;       // transmitter-receiver pairs (one IRS each)
    int M = 1;       // antennas per transmitter
    int N = 1;       // reflecting elements per IRS
    RVec P;          // per-transmitter power budget, linear watts, length K
    double sigma2 = 1.0;  // receiver noise power, linear watts
    uint64_t seed = 0;

    void validate() const {
        if (K < 1 || M < 1 || N < 1) throw InvalidInput("SystemConfig: K, M, N must be >= 1");
        if (P.size() != K) throw InvalidInput("SystemConfig: P must have K entries");
        for (int j = 0; j < K; ++j)
            if (!(P(j) > 0.0)) throw InvalidInput("SystemConfig: all power budgets must be > 0");
        if (!(sigma2 > 0.0)) throw InvalidInput("SystemConfig: sigma2 must be > 0");
    }
};

/// Planar node positions in meters.
struct Geometry {
    std::vector<Vec2> tx;   // length K
    std::vector<Vec2> rx;   // length K
    std::vector<Vec2> irs;  // length K

    void validate(const SystemConfig& cfg) const {
        const auto k = static_cast<size_t>(cfg.K);
        if (tx.size() != k || rx.size() != k || irs.size() != k)
            throw InvalidInput("Geometry: need K positions for tx, rx and irs");
    }
};

/// Distance-dependent attenuation: variance(d) = C0 * (d/d0)^(-beta).
/// C0 is the linear gain at the reference distance d0.
struct PathLossModel {
    double C0 = 1e-3;  // -30 dB at 1 m
    double d0 = 1.0;
    double beta_direct = 3.6;
    double beta_tx_irs = 2.0;
    double beta_irs_rx = 2.5;

    void validate() const {
        if (!(C0 > 0.0) || !(d0 > 0.0)) throw InvalidInput("PathLossModel: C0 and d0 must be > 0");
        if (beta_direct < 0 || beta_tx_irs < 0 || beta_irs_rx < 0)
            throw InvalidInput("PathLossModel: exponents must be >= 0");
    }

    double variance(double d, double beta) const {
        if (!(d > 0.0)) throw InvalidInput("PathLossModel: zero distance between nodes");
        return C0 * std::pow(d / d0, -beta);
    }
};

/// Builds the cascaded transmitter->IRS->receiver channel: row n of the
/// result is conj(irs_to_rx[n]) times row n of tx_to_irs, so that the
/// composite reflected link is reflect^H * cascaded.
inline CMat cascade(const CVec& irs_to_rx, const CMat& tx_to_irs) {
    if (irs_to_rx.size() != tx_to_irs.rows())
        throw InvalidInput("cascade: irs_to_rx length must match tx_to_irs rows");
    return irs_to_rx.conjugate().asDiagonal() * tx_to_irs;
}

/// All channel tensors of one deployment. Immutable after generation.
///
/// direct[k][j]     : transmitter j -> receiver k, length M
/// tx_to_irs[i][j]  : transmitter j -> IRS i, N x M
/// irs_to_rx[k][i]  : IRS i -> receiver k, length N
/// cascaded[k][i][j]: diag(conj(irs_to_rx[k][i])) * tx_to_irs[i][j], N x M
struct ChannelSet {
    SystemConfig config;
    Geometry geom;
    PathLossModel plm;

    std::vector<std::vector<CVec>> direct;
    std::vector<std::vector<CMat>> tx_to_irs;
    std::vector<std::vector<CVec>> irs_to_rx;
    std::vector<std::vector<std::vector<CMat>>> cascaded;

    void rebuild_cascaded() {
        const int K = config.K;
        cascaded.assign(K, std::vector<std::vector<CMat>>(K, std::vector<CMat>(K)));
        for (int k = 0; k < K; ++k)
            for (int i = 0; i < K; ++i)
                for (int j = 0; j < K; ++j)
                    cascaded[k][i][j] = cascade(irs_to_rx[k][i], tx_to_irs[i][j]);
    }
};

/// Draws every link as i.i.d. Rayleigh fading scaled by the path-loss
/// variance of its distance. Deterministic in (config, geom, plm):
/// each tensor owns a named counter-based stream.
inline ChannelSet generate_channels(const SystemConfig& config, const Geometry& geom,
                                    const PathLossModel& plm) {
    config.validate();
    geom.validate(config);
    plm.validate();

    const int K = config.K, M = config.M, N = config.N;
    ChannelSet cs;
    cs.config = config;
    cs.geom = geom;
    cs.plm = plm;

    cs.direct.assign(K, std::vector<CVec>(K));
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < K; ++j) {
            double var = plm.variance((geom.rx[k] - geom.tx[j]).norm(), plm.beta_direct);
            StreamRng rng(config.seed, "direct/" + std::to_string(k) + "/" + std::to_string(j));
            CVec h(M);
            for (int m = 0; m < M; ++m) h(m) = rng.cnormal(var);
            cs.direct[k][j] = std::move(h);
        }

    cs.tx_to_irs.assign(K, std::vector<CMat>(K));
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            double var = plm.variance((geom.irs[i] - geom.tx[j]).norm(), plm.beta_tx_irs);
            StreamRng rng(config.seed, "tx_to_irs/" + std::to_string(i) + "/" + std::to_string(j));
            CMat G(N, M);
            for (int n = 0; n < N; ++n)
                for (int m = 0; m < M; ++m) G(n, m) = rng.cnormal(var);
            cs.tx_to_irs[i][j] = std::move(G);
        }

    cs.irs_to_rx.assign(K, std::vector<CVec>(K));
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < K; ++i) {
            double var = plm.variance((geom.rx[k] - geom.irs[i]).norm(), plm.beta_irs_rx);
            StreamRng rng(config.seed, "irs_to_rx/" + std::to_string(k) + "/" + std::to_string(i));
            CVec f(N);
            for (int n = 0; n < N; ++n) f(n) = rng.cnormal(var);
            cs.irs_to_rx[k][i] = std::move(f);
        }

    cs.rebuild_cascaded();
    return cs;
}

/// Copy with all reflected links removed (conventional IFC without IRS).
inline ChannelSet strip_irs(const ChannelSet& cs) {
    ChannelSet out = cs;
    for (auto& row : out.irs_to_rx)
        for (auto& f : row) f.setZero();
    out.rebuild_cascaded();
    return out;
}

// ---------------------------------------------------------------------------
// Channel file I/O. JSON with complex scalars as [re, im] pairs; doubles
// serialized with round-trip precision. The cascaded tensor is derived and
// not stored.
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json cvec_to_json(const CVec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back({v(i).real(), v(i).imag()});
    return a;
}

inline nlohmann::json cmat_to_json(const CMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline cplx cplx_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidInput("channel file: complex scalar must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline CVec cvec_from_json(const nlohmann::json& j, Eigen::Index expect) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != expect)
        throw InvalidInput("channel file: vector length mismatch");
    CVec v(expect);
    for (Eigen::Index i = 0; i < expect; ++i) v(i) = cplx_from_json(j[i]);
    return v;
}

inline CMat cmat_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw InvalidInput("channel file: matrix row count mismatch");
    CMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InvalidInput("channel file: matrix column count mismatch");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = cplx_from_json(row[c]);
    }
    return m;
}

inline nlohmann::json positions_to_json(const std::vector<Vec2>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : ps) a.push_back({p.x(), p.y()});
    return a;
}

inline std::vector<Vec2> positions_from_json(const nlohmann::json& j) {
    std::vector<Vec2> ps;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw InvalidInput("channel file: bad position");
        ps.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ps;
}

}  // namespace detail

inline nlohmann::json channels_to_json(const ChannelSet& cs) {
    nlohmann::json j;
    j["config"] = {{"K", cs.config.K},     {"M", cs.config.M},
                   {"N", cs.config.N},     {"P", std::vector<double>(cs.config.P.begin(), cs.config.P.end())},
                   {"sigma2", cs.config.sigma2}, {"seed", cs.config.seed}};
    j["geometry"] = {{"tx", detail::positions_to_json(cs.geom.tx)},
                     {"rx", detail::positions_to_json(cs.geom.rx)},
                     {"irs", detail::positions_to_json(cs.geom.irs)}};
    j["pathloss"] = {{"C0", cs.plm.C0},
                     {"d0", cs.plm.d0},
                     {"beta_direct", cs.plm.beta_direct},
                     {"beta_tx_irs", cs.plm.beta_tx_irs},
                     {"beta_irs_rx", cs.plm.beta_irs_rx}};
    nlohmann::json h = nlohmann::json::array(), G = nlohmann::json::array(), f = nlohmann::json::array();
    for (int k = 0; k < cs.config.K; ++k) {
        nlohmann::json hk = nlohmann::json::array(), fk = nlohmann::json::array();
        for (int j2 = 0; j2 < cs.config.K; ++j2) {
            hk.push_back(detail::cvec_to_json(cs.direct[k][j2]));
            fk.push_back(detail::cvec_to_json(cs.irs_to_rx[k][j2]));
        }
        h.push_back(std::move(hk));
        f.push_back(std::move(fk));
    }
    for (int i = 0; i < cs.config.K; ++i) {
        nlohmann::json Gi = nlohmann::json::array();
        for (int j2 = 0; j2 < cs.config.K; ++j2) Gi.push_back(detail::cmat_to_json(cs.tx_to_irs[i][j2]));
        G.push_back(std::move(Gi));
    }
    j["direct"] = std::move(h);
    j["tx_to_irs"] = std::move(G);
    j["irs_to_rx"] = std::move(f);
    return j;
}

inline ChannelSet channels_from_json(const nlohmann::json& j) {
    ChannelSet cs;
    try {
        const auto& jc = j.at("config");
        cs.config.K = jc.at("K").get<int>();
        cs.config.M = jc.at("M").get<int>();
        cs.config.N = jc.at("N").get<int>();
        auto P = jc.at("P").get<std::vector<double>>();
        cs.config.P = Eigen::Map<RVec>(P.data(), static_cast<Eigen::Index>(P.size()));
        cs.config.sigma2 = jc.at("sigma2").get<double>();
        cs.config.seed = jc.at("seed").get<uint64_t>();

        const auto& jg = j.at("geometry");
        cs.geom.tx = detail::positions_from_json(jg.at("tx"));
        cs.geom.rx = detail::positions_from_json(jg.at("rx"));
        cs.geom.irs = detail::positions_from_json(jg.at("irs"));

        const auto& jp = j.at("pathloss");
        cs.plm.C0 = jp.at("C0").get<double>();
        cs.plm.d0 = jp.at("d0").get<double>();
        cs.plm.beta_direct = jp.at("beta_direct").get<double>();
        cs.plm.beta_tx_irs = jp.at("beta_tx_irs").get<double>();
        cs.plm.beta_irs_rx = jp.at("beta_irs_rx").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("channel file: ") + e.what());
    }
    cs.config.validate();
    cs.geom.validate(cs.config);
    cs.plm.validate();

    const int K = cs.config.K, M = cs.config.M, N = cs.config.N;
    try {
        const auto& jh = j.at("direct");
        const auto& jG = j.at("tx_to_irs");
        const auto& jf = j.at("irs_to_rx");
        if (jh.size() != size_t(K) || jG.size() != size_t(K) || jf.size() != size_t(K))
            throw InvalidInput("channel file: tensor K dimension mismatch");
        cs.direct.assign(K, std::vector<CVec>(K));
        cs.tx_to_irs.assign(K, std::vector<CMat>(K));
        cs.irs_to_rx.assign(K, std::vector<CVec>(K));
        for (int k = 0; k < K; ++k) {
            if (jh[k].size() != size_t(K) || jG[k].size() != size_t(K) || jf[k].size() != size_t(K))
                throw InvalidInput("channel file: tensor K dimension mismatch");
            for (int l = 0; l < K; ++l) {
                cs.direct[k][l] = detail::cvec_from_json(jh[k][l], M);
                cs.tx_to_irs[k][l] = detail::cmat_from_json(jG[k][l], N, M);
                cs.irs_to_rx[k][l] = detail::cvec_from_json(jf[k][l], N);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("channel file: ") + e.what());
    }
    cs.rebuild_cascaded();
    return cs;
}

inline void save_channels(const ChannelSet& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("save_channels: cannot open " + path);
    out << channels_to_json(cs).dump(1) << "\n";
    if (!out) throw IoError("save_channels: write failed for " + path);
}

inline ChannelSet load_channels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_channels: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("load_channels: parse error: ") + e.what());
    }
    return channels_from_json(j);
}

inline bool channels_equal(const ChannelSet& a, const ChannelSet& b) {
    if (a.config.K != b.config.K || a.config.M != b.config.M || a.config.N != b.config.N)
        return false;
    for (int k = 0; k < a.config.K; ++k)
        for (int j = 0; j < a.config.K; ++j) {
            if (a.direct[k][j] != b.direct[k][j]) return false;
            if (a.tx_to_irs[k][j] != b.tx_to_irs[k][j]) return false;
            if (a.irs_to_rx[k][j] != b.irs_to_rx[k][j]) return false;
        }
    return true;
}

}  // namespace irsifc
