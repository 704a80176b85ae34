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
// Margin-based feasibility oracles for the two conic shapes of the design:
// per-user SINR cones with power balls (SOC), and unit-diagonal PSD programs
// with trace-linear inequalities (SDP). Both solve the max-margin variant:
// a common slack t is added to every inequality and maximized, so the sign
// of the optimum decides feasibility robustly. Margins are reported in
// per-constraint normalized units (each cone is scaled by a fixed,
// target-independent factor), which keeps margins comparable across probes.
// The slack is additionally capped at +1: deeply feasible instances would
// otherwise blow up the objective scale without sharpening the verdict.

#pragma once

#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irsifc/conic/solver.hpp"

namespace irsifc::conic {

enum class FeasStatus { kFeasible, kInfeasible, kNumericalFailure };

template <class Witness>
struct FeasibilityVerdict {
    FeasStatus status = FeasStatus::kNumericalFailure;
    double margin = std::numeric_limits<double>::quiet_NaN();
    std::optional<Witness> witness;
    int iters = 0;
    std::string message;

    bool feasible() const { return status == FeasStatus::kFeasible; }
};

// --------------------------------------------------------------------------
// SOC shape: for each listed user k,
//   Re(own^H w_k) / sqrt(sinr_target) >= || [cross gains; sigma] ||
// plus ||w_j||^2 <= P_j for every active transmitter.
// --------------------------------------------------------------------------

struct SocUserConstraint {
    int user = 0;                             // receiver index
    CVec own;                                 // effective own channel
    std::vector<std::pair<int, CVec>> cross;  // (transmitter j, effective channel)
    double sinr_target = 0.0;                 // 2^{zeta_k R} - 1
};

struct SocFeasibilityProblem {
    int K = 0;     // total transmitters (witness size)
    int M = 0;     // antennas
    RVec P;        // power budgets, length K
    double sigma = 1.0;  // noise standard deviation
    std::vector<int> active;  // transmitting users; others fixed to w = 0
    std::vector<SocUserConstraint> users;
    bool trivially_infeasible = false;
    bool trivially_feasible = false;
    std::string note;
};

struct SocWitness {
    std::vector<CVec> w;  // length K; silent users hold zero vectors
};

namespace detail {

// Row coefficients of Re(g^H w) and Im(g^H w) over the stacked [Re w; Im w].
inline void add_re_inner(ConeLpData& P, int row, int col0, const CVec& g, double scale) {
    const int M = static_cast<int>(g.size());
    for (int m = 0; m < M; ++m) {
        P.add(col0 + m, row, -scale * g(m).real());
        P.add(col0 + M + m, row, -scale * g(m).imag());
    }
}

inline void add_im_inner(ConeLpData& P, int row, int col0, const CVec& g, double scale) {
    const int M = static_cast<int>(g.size());
    for (int m = 0; m < M; ++m) {
        P.add(col0 + m, row, scale * g(m).imag());
        P.add(col0 + M + m, row, -scale * g(m).real());
    }
}

}  // namespace detail

inline FeasibilityVerdict<SocWitness> solve_soc_feasibility(const SocFeasibilityProblem& p,
                                                            double feas_tol = 1e-7,
                                                            const ConeSettings& settings = {}) {
    FeasibilityVerdict<SocWitness> verdict;
    SocWitness zero_witness;
    zero_witness.w.assign(p.K, CVec::Zero(p.M));

    if (p.trivially_infeasible) {
        verdict.status = FeasStatus::kInfeasible;
        verdict.margin = -kInf;
        verdict.message = p.note;
        return verdict;
    }
    if (p.trivially_feasible || (p.users.empty() && p.active.empty())) {
        verdict.status = FeasStatus::kFeasible;
        verdict.margin = kInf;
        verdict.witness = std::move(zero_witness);
        verdict.message = p.note;
        return verdict;
    }

    const int A = static_cast<int>(p.active.size());
    const int M = p.M;
    std::vector<int> col_of(p.K, -1);
    for (int a = 0; a < A; ++a) col_of[p.active[a]] = 1 + 2 * M * a;

    int m_rows = 1;  // margin cap row
    std::vector<int> user_dims;
    for (const auto& uc : p.users) {
        user_dims.push_back(2 + 2 * static_cast<int>(uc.cross.size()));
        m_rows += user_dims.back();
    }
    m_rows += A * (1 + 2 * M);

    ConeLpData cp;
    cp.dims.nonneg = 1;
    cp.dims.soc.reserve(p.users.size() + A);
    for (int d : user_dims) cp.dims.soc.push_back(d);
    for (int a = 0; a < A; ++a) cp.dims.soc.push_back(1 + 2 * M);
    cp.init(1 + 2 * M * A, m_rows);
    cp.c(0) = -1.0;  // maximize the margin
    cp.h(0) = 1.0;   // t <= 1
    cp.add(0, 0, 1.0);

    int row = 1;
    for (const auto& uc : p.users) {
        const double denom = std::sqrt(uc.sinr_target) * p.sigma;
        // u0 = Re(own^H w_k)/denom - t
        cp.add(0, row, 1.0);
        detail::add_re_inner(cp, row, col_of[uc.user], uc.own, 1.0 / denom);
        ++row;
        for (const auto& [j, g] : uc.cross) {
            detail::add_re_inner(cp, row++, col_of[j], g, 1.0 / p.sigma);
            detail::add_im_inner(cp, row++, col_of[j], g, 1.0 / p.sigma);
        }
        cp.h(row++) = 1.0;  // sigma / sigma
    }
    for (int a = 0; a < A; ++a) {
        const int j = p.active[a];
        const double rootP = std::sqrt(p.P(j));
        cp.h(row) = 1.0;  // 1 - t/sqrt(P_j)
        cp.add(0, row++, 1.0 / rootP);
        for (int i = 0; i < 2 * M; ++i) cp.add(col_of[j] + i, row++, -1.0 / rootP);
    }

    auto sol = solve_conelp(cp, settings);
    verdict.iters = sol.iters;
    if (sol.status != SolveStatus::kOptimal) {
        verdict.status = FeasStatus::kNumericalFailure;
        verdict.message = sol.message;
        return verdict;
    }
    verdict.margin = sol.x(0);
    if (verdict.margin >= -feas_tol) {
        verdict.status = FeasStatus::kFeasible;
        SocWitness wit = std::move(zero_witness);
        for (int a = 0; a < A; ++a) {
            const int j = p.active[a];
            CVec w(M);
            for (int m = 0; m < M; ++m)
                w(m) = cplx(sol.x(col_of[j] + m), sol.x(col_of[j] + M + m));
            wit.w[j] = std::move(w);
        }
        verdict.witness = std::move(wit);
    } else {
        verdict.status = FeasStatus::kInfeasible;
    }
    return verdict;
}

/// Worst original-constraint slack of a witness (nonnegative means all
/// constraints hold). Used to re-check feasible verdicts.
inline double soc_witness_slack(const SocFeasibilityProblem& p, const SocWitness& wit) {
    double worst = kInf;
    for (const auto& uc : p.users) {
        const cplx own = uc.own.adjoint() * wit.w[uc.user];
        double rhs2 = p.sigma * p.sigma;
        for (const auto& [j, g] : uc.cross) rhs2 += std::norm(cplx(g.adjoint() * wit.w[j]));
        worst = std::min(worst, own.real() / std::sqrt(uc.sinr_target) - std::sqrt(rhs2));
    }
    for (int j : p.active)
        worst = std::min(worst, std::sqrt(p.P(j)) - wit.w[j].norm());
    return worst;
}

// --------------------------------------------------------------------------
// SDP shape: Hermitian V with unit diagonal, V >= 0, and trace-linear
// inequalities Tr(A_k V) >= rhs_k. The margin slack enters each inequality
// scaled by the fixed normalization `scale`.
// --------------------------------------------------------------------------

struct TraceConstraint {
    CMat A;          // Hermitian
    double rhs = 0.0;
    double scale = 1.0;  // fixed normalization (independent of the rate target)
};

struct SdpFeasibilityProblem {
    int n = 0;  // Hermitian dimension
    std::vector<TraceConstraint> constraints;
};

struct SdpWitness {
    CMat V;
};

inline FeasibilityVerdict<SdpWitness> solve_sdp_feasibility(const SdpFeasibilityProblem& p,
                                                            double feas_tol = 1e-7,
                                                            const ConeSettings& settings = {}) {
    FeasibilityVerdict<SdpWitness> verdict;
    if (p.constraints.empty()) {
        verdict.status = FeasStatus::kFeasible;
        verdict.margin = kInf;
        verdict.witness = SdpWitness{CMat::Identity(p.n, p.n)};
        return verdict;
    }

    const int n = p.n;
    const int kc = static_cast<int>(p.constraints.size());
    const int n_vars = 1 + n * (n - 1);  // t + (Re, Im) per strict upper pair
    const int lifted = 2 * n;
    const int m_rows = kc + 1 + svec_dim(lifted);

    ConeLpData cp;
    cp.dims.nonneg = kc + 1;  // one slack row per constraint plus the margin cap
    cp.dims.psd = {lifted};
    cp.init(n_vars, m_rows);
    cp.c(0) = -1.0;
    cp.h(kc) = 1.0;  // t <= 1
    cp.add(0, kc, 1.0);

    // Column index of Re/Im of V(p,q), p < q.
    auto re_col = [n](int pp, int qq) {
        int pair = pp * (2 * n - pp - 1) / 2 + (qq - pp - 1);
        return 1 + 2 * pair;
    };

    // Trace rows: s_k = (Tr(A V) - rhs)/scale - t with diag(V) = 1 folded in.
    for (int k = 0; k < kc; ++k) {
        const auto& tc = p.constraints[k];
        if (tc.A.rows() != n || tc.A.cols() != n)
            throw InvalidInput("solve_sdp_feasibility: constraint dimension mismatch");
        double diag_part = tc.A.real().diagonal().sum();
        cp.h(k) = (diag_part - tc.rhs) / tc.scale;
        cp.add(0, k, 1.0);
        for (int pp = 0; pp < n; ++pp)
            for (int qq = pp + 1; qq < n; ++qq) {
                const cplx a = tc.A(pp, qq);
                cp.add(re_col(pp, qq), k, -2.0 * a.real() / tc.scale);
                cp.add(re_col(pp, qq) + 1, k, -2.0 * a.imag() / tc.scale);
            }
    }

    // PSD rows: svec of the real lift [[Re V, -Im V], [Im V, Re V]].
    const int psd_off = kc + 1;
    auto lift_row = [&](int i, int j) { return psd_off + svec_index(i, j, lifted); };
    for (int d = 0; d < n; ++d) {
        cp.h(lift_row(d, d)) = 1.0;
        cp.h(lift_row(n + d, n + d)) = 1.0;
    }
    for (int pp = 0; pp < n; ++pp)
        for (int qq = pp + 1; qq < n; ++qq) {
            const int ca = re_col(pp, qq), cb = ca + 1;
            // Re V(p,q) lands in both diagonal blocks.
            cp.add(ca, lift_row(qq, pp), -kSqrt2);
            cp.add(ca, lift_row(n + qq, n + pp), -kSqrt2);
            // Im V(p,q): lift entries (n+p, q) = +b and (n+q, p) = -b.
            cp.add(cb, lift_row(n + pp, qq), -kSqrt2);
            cp.add(cb, lift_row(n + qq, pp), kSqrt2);
        }

    auto sol = solve_conelp(cp, settings);
    verdict.iters = sol.iters;
    if (sol.status != SolveStatus::kOptimal) {
        verdict.status = FeasStatus::kNumericalFailure;
        verdict.message = sol.message;
        return verdict;
    }
    verdict.margin = sol.x(0);
    if (verdict.margin >= -feas_tol) {
        verdict.status = FeasStatus::kFeasible;
        CMat V = CMat::Identity(n, n);
        for (int pp = 0; pp < n; ++pp)
            for (int qq = pp + 1; qq < n; ++qq) {
                V(pp, qq) = cplx(sol.x(re_col(pp, qq)), sol.x(re_col(pp, qq) + 1));
                V(qq, pp) = std::conj(V(pp, qq));
            }
        verdict.witness = SdpWitness{std::move(V)};
    } else {
        verdict.status = FeasStatus::kInfeasible;
    }
    return verdict;
}

/// Worst normalized slack of the trace constraints at a witness.
inline double sdp_witness_slack(const SdpFeasibilityProblem& p, const SdpWitness& wit) {
    double worst = kInf;
    for (const auto& tc : p.constraints) {
        double val = (tc.A * wit.V).trace().real();
        worst = std::min(worst, (val - tc.rhs) / tc.scale);
    }
    return worst;
}

/// Debug dump of raw conic problem data (same number conventions as the
/// channel files).
inline void dump_problem(const ConeLpData& p, const std::string& path) {
    nlohmann::json j;
    j["n"] = p.n;
    j["c"] = std::vector<double>(p.c.begin(), p.c.end());
    j["h"] = std::vector<double>(p.h.begin(), p.h.end());
    j["dims"] = {{"nonneg", p.dims.nonneg}, {"soc", p.dims.soc}, {"psd", p.dims.psd}};
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : p.cols) {
        nlohmann::json entries = nlohmann::json::array();
        for (auto [r, v] : col) entries.push_back({{"row", r}, {"val", v}});
        cols.push_back(std::move(entries));
    }
    j["G_cols"] = std::move(cols);
    std::ofstream out(path);
    if (!out) throw InvalidInput("dump_problem: cannot open " + path);
    out << j.dump(1) << "\n";
}

}  // namespace irsifc::conic
