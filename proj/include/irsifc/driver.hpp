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
// Outer loop: block-coordinate alternation between the transmit (SOCP) and
// reflective (SDR) subproblems, each driven by its own bisection. The lower
// bisection bound carries across blocks and outer iterations; only the upper
// bound resets to R_max. Also hosts the rate-profile sweep that traces the
// Pareto boundary and the two benchmark schemes.

#pragma once

#include <atomic>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "irsifc/rate.hpp"
#include "irsifc/reflectopt.hpp"
#include "irsifc/singleuser.hpp"
#include "irsifc/txopt.hpp"

namespace irsifc {

enum class ReflectInit { kAllOnes, kSingleUserAscent };

struct BcdOptions {
    double eps_outer = 1e-3;   // stop when one outer iteration gains less
    double eps_bisect = 1e-4;
    double feas_tol = 1e-7;
    int n_rand = 200;
    int max_outer = 30;
    uint64_t seed = 0;
    ReflectInit init = ReflectInit::kAllOnes;
    conic::ConeSettings solver;

    static BcdOptions full_scale() {
        BcdOptions o;
        o.n_rand = kFullScaleRandomizations;
        return o;
    }
};

struct BcdReport {
    std::vector<double> R_trace;  // certified target after each outer iteration
    BeamformingState state;
    RVec rates;
    double R = 0.0;
    int outer_iters = 0;
    bool converged = false;
    int failures = 0;
    bool profile_ok = false;
    std::vector<TxProbe> tx_trace;
    std::vector<ReflectProbe> reflect_trace;
};

/// Upper bound on any achievable rate target: no user can beat the
/// interference-free SNR of its own link with every reflected path adding
/// coherently, amplitudes bounded by row norms of the cascaded channels.
inline double initial_Rmax(const ChannelSet& cs, const RateProfile& zeta) {
    zeta.validate();
    double bound = conic::kInf;
    for (int k = 0; k < cs.config.K; ++k) {
        if (!(zeta.weights(k) > 0.0)) continue;
        double amp = cs.direct[k][k].norm();
        for (int i = 0; i < cs.config.K; ++i)
            for (int n = 0; n < cs.config.N; ++n)
                amp += cs.cascaded[k][i][k].row(n).norm();
        const double snr = cs.config.P(k) / cs.config.sigma2 * amp * amp;
        bound = std::min(bound, std::log2(1.0 + snr) / zeta.weights(k));
    }
    return bound;
}

inline BcdReport bcd_solve(const ChannelSet& cs, const RateProfile& zeta,
                           const BcdOptions& opt = {}) {
    zeta.validate();
    if (zeta.weights.size() != cs.config.K)
        throw InvalidInput("bcd_solve: profile length must equal K");
    const int K = cs.config.K, N = cs.config.N;

    BcdReport rep;
    std::vector<CVec> v(K, CVec::Ones(N));
    if (opt.init == ReflectInit::kSingleUserAscent) {
        int lead = 0;
        zeta.weights.maxCoeff(&lead);
        v = coordinate_ascent(cs, lead, v).reflect;
    }
    std::vector<CVec> w(K, CVec::Zero(cs.config.M));
    double R_L = 0.0;
    const double R_max = initial_Rmax(cs, zeta);

    TxOptions topt;
    topt.eps_bisect = opt.eps_bisect;
    topt.feas_tol = opt.feas_tol;
    topt.solver = opt.solver;
    ReflectOptions ropt;
    ropt.eps_bisect = opt.eps_bisect;
    ropt.feas_tol = opt.feas_tol;
    ropt.n_rand = opt.n_rand;
    ropt.solver = opt.solver;

    double R_prev = 0.0;
    for (int outer = 0; outer < opt.max_outer; ++outer) {
        auto tx = max_rate_tx(cs, v, zeta, R_max, topt, R_L, w);
        w = tx.w;
        R_L = tx.R;
        rep.failures += tx.failures;
        rep.tx_trace.insert(rep.tx_trace.end(), tx.trace.begin(), tx.trace.end());

        ropt.seed = derive_seed(opt.seed, "bcd_outer", outer);
        auto rf = max_rate_reflect(cs, w, zeta, R_max, ropt, R_L, v);
        v = rf.reflect;
        R_L = rf.R;
        rep.failures += rf.failures;
        rep.reflect_trace.insert(rep.reflect_trace.end(), rf.trace.begin(), rf.trace.end());

        rep.R_trace.push_back(R_L);
        rep.outer_iters = outer + 1;
        if (R_L - R_prev < opt.eps_outer) {
            rep.converged = true;
            break;
        }
        R_prev = R_L;
    }

    rep.state.tx = std::move(w);
    rep.state.reflect = std::move(v);
    rep.rates = all_rates(cs, rep.state);
    rep.R = R_L;
    rep.profile_ok = check_profile(rep.rates, zeta, rep.R, kConstraintTol);
    return rep;
}

// --------------------------------------------------------------------------
// Pareto sweep and benchmark schemes
// --------------------------------------------------------------------------

enum class Scheme { kProposed, kRandomReflective, kNoIrs };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kProposed: return "proposed";
        case Scheme::kRandomReflective: return "random-reflective";
        case Scheme::kNoIrs: return "no-irs";
    }
    return "?";
}

struct ParetoPoint {
    RVec zeta;
    double R = 0.0;
    RVec rates;
    Scheme scheme = Scheme::kProposed;
    uint64_t seed = 0;  // per-point algorithm seed
    bool ok = false;    // false when any numerical failure occurred
    int failures = 0;
    BeamformingState state;
    std::vector<double> R_trace;
};

inline ParetoPoint scheme_random_reflective(const ChannelSet& cs, const RateProfile& zeta,
                                            const BcdOptions& opt, uint64_t point_seed) {
    const int K = cs.config.K, N = cs.config.N;
    StreamRng rng(point_seed, "random_reflective_phases");
    std::vector<CVec> v(K, CVec(N));
    for (int i = 0; i < K; ++i)
        for (int n = 0; n < N; ++n) v[i](n) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));

    TxOptions topt;
    topt.eps_bisect = opt.eps_bisect;
    topt.feas_tol = opt.feas_tol;
    topt.solver = opt.solver;
    auto tx = max_rate_tx(cs, v, zeta, initial_Rmax(cs, zeta), topt);

    ParetoPoint pt;
    pt.zeta = zeta.weights;
    pt.scheme = Scheme::kRandomReflective;
    pt.seed = point_seed;
    pt.R = tx.R;
    pt.state.tx = tx.w;
    pt.state.reflect = std::move(v);
    pt.rates = all_rates(cs, pt.state);
    pt.failures = tx.failures;
    pt.ok = tx.failures == 0;
    pt.R_trace = {tx.R};
    return pt;
}

inline ParetoPoint scheme_no_irs(const ChannelSet& cs, const RateProfile& zeta,
                                 const BcdOptions& opt, uint64_t point_seed = 0) {
    const ChannelSet bare = strip_irs(cs);
    TxOptions topt;
    topt.eps_bisect = opt.eps_bisect;
    topt.feas_tol = opt.feas_tol;
    topt.solver = opt.solver;
    std::vector<CVec> v(cs.config.K, CVec::Ones(cs.config.N));
    auto tx = max_rate_tx(bare, v, zeta, initial_Rmax(bare, zeta), topt);

    ParetoPoint pt;
    pt.zeta = zeta.weights;
    pt.scheme = Scheme::kNoIrs;
    pt.seed = point_seed;
    pt.R = tx.R;
    pt.state.tx = tx.w;
    pt.state.reflect = std::move(v);
    pt.rates = all_rates(bare, pt.state);
    pt.failures = tx.failures;
    pt.ok = tx.failures == 0;
    pt.R_trace = {tx.R};
    return pt;
}

inline ParetoPoint run_point(const ChannelSet& cs, const RateProfile& zeta, Scheme scheme,
                             const BcdOptions& opt, uint64_t point_seed) {
    switch (scheme) {
        case Scheme::kRandomReflective:
            return scheme_random_reflective(cs, zeta, opt, point_seed);
        case Scheme::kNoIrs:
            return scheme_no_irs(cs, zeta, opt, point_seed);
        case Scheme::kProposed:
        default: {
            BcdOptions o = opt;
            o.seed = point_seed;
            auto rep = bcd_solve(cs, zeta, o);
            ParetoPoint pt;
            pt.zeta = zeta.weights;
            pt.scheme = Scheme::kProposed;
            pt.seed = point_seed;
            pt.R = rep.R;
            pt.rates = rep.rates;
            pt.state = std::move(rep.state);
            pt.failures = rep.failures;
            pt.ok = rep.failures == 0;
            pt.R_trace = std::move(rep.R_trace);
            return pt;
        }
    }
}

/// Runs every (zeta, scheme) cell, optionally across threads. Results are
/// ordered by (zeta index, scheme index) and deterministic in opt.seed
/// regardless of scheduling.
inline std::vector<ParetoPoint> pareto_sweep(const ChannelSet& cs,
                                             const std::vector<RateProfile>& zetas,
                                             const std::vector<Scheme>& schemes,
                                             const BcdOptions& opt = {}, int jobs = 1) {
    for (const auto& z : zetas) z.validate();
    const int n_pts = static_cast<int>(zetas.size() * schemes.size());
    std::vector<ParetoPoint> points(n_pts);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int p = next.fetch_add(1); p < n_pts; p = next.fetch_add(1)) {
            const int zi = p / static_cast<int>(schemes.size());
            const int si = p % static_cast<int>(schemes.size());
            const uint64_t pseed = derive_seed(opt.seed, "sweep_point", static_cast<uint64_t>(p));
            points[p] = run_point(cs, zetas[zi], schemes[si], opt, pseed);
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return points;
}

/// Evenly spaced two-user profile grid including both corners.
inline std::vector<RateProfile> zeta_grid_2user(int n_points) {
    if (n_points < 2) throw InvalidInput("zeta_grid_2user: need at least 2 points");
    std::vector<RateProfile> out;
    for (int i = 0; i < n_points; ++i) {
        const double z1 = double(i) / (n_points - 1);
        RateProfile p;
        p.weights = RVec(2);
        p.weights << 1.0 - z1, z1;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace irsifc
