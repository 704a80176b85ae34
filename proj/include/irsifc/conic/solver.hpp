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
// Dense primal-dual interior-point solver for
//
//     minimize    c^T x
//     subject to  G x + s = h,   s in C,
//
// where C is a product of nonnegative, second-order and PSD cones. The
// iteration runs on the homogeneous self-dual embedding with Nesterov-Todd
// scaling and a Mehrotra predictor-corrector step, following the classic
// conelp scheme. Designed for the desk-scale problems of this library
// (hundreds of variables); all linear algebra is dense.
//
// Per iteration the Newton system reduces to the positive definite
// M = G^T (W^T W)^{-1} G. PSD-cone columns of G are sparse symmetric
// patterns here, so their contribution to M is assembled as
// Tr(A_i U A_j U) with U = rti * rti^T instead of forming W^{-T} G.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "irsifc/conic/cones.hpp"

namespace irsifc::conic {

struct ConeLpData {
    int n = 0;     // number of variables
    RVec c;        // objective
    RVec h;        // cone offsets
    ConeDims dims;
    std::vector<std::vector<std::pair<int, double>>> cols;  // sparse columns of G

    void init(int n_vars, int m_rows) {
        n = n_vars;
        c = RVec::Zero(n_vars);
        h = RVec::Zero(m_rows);
        cols.assign(n_vars, {});
    }
    void add(int col, int row, double val) {
        if (val != 0.0) cols[col].emplace_back(row, val);
    }
};

struct ConeSettings {
    int max_iters = 200;
    double feastol = 1e-8;
    double abstol = 1e-8;
    double reltol = 1e-8;
    // Accepted when the iteration breaks down numerically after reaching
    // at least this accuracy (interior-point iterates can leave the cone
    // right at the boundary once the solution is essentially found).
    double acceptable = 1e-6;
    double step_frac = 0.99;
};

enum class SolveStatus { kOptimal, kMaxIters, kFailure };

struct ConeSolution {
    SolveStatus status = SolveStatus::kFailure;
    RVec x, s, z;
    double pobj = 0.0;
    double gap = 0.0, pres = 0.0, dres = 0.0;
    int iters = 0;
    std::string message;
};

class ConeLpSolver {
  public:
    ConeLpSolver(const ConeLpData& P, const ConeSettings& settings = {})
        : P_(P), st_(settings), layout_(P.dims) {
        m_ = layout_.m();
        if (P_.h.size() != m_) throw InvalidInput("ConeLpSolver: h size does not match cones");
        if (P_.c.size() != P_.n || static_cast<int>(P_.cols.size()) != P_.n)
            throw InvalidInput("ConeLpSolver: inconsistent variable count");
        build_structure();
    }

    ConeSolution solve() {
        ConeSolution sol;
        x_ = RVec::Zero(P_.n);
        tau_ = kappa_ = 1.0;
        if (!initial_point(sol)) return sol;

        const double hnorm = std::max(1.0, P_.h.norm());
        const double cnorm = std::max(1.0, P_.c.norm());

        RVec best_x, best_s, best_z;
        double best_tau = 1.0, best_err = kInf;
        double best_pres = kInf, best_dres = kInf, best_gap = kInf;

        std::string stop;
        for (int iter = 0; iter <= st_.max_iters; ++iter) {
            // Residuals of the embedding.
            RVec rx = gemv_t(z_) + P_.c * tau_;     // G^T z + c tau
            RVec rz = gemv(x_) + s_ - P_.h * tau_;  // G x + s - h tau
            double rtau = P_.c.dot(x_) + P_.h.dot(z_) + kappa_;
            double gap = s_.dot(z_);
            double mu = (gap + tau_ * kappa_) / (layout_.degree() + 1);

            double pcost = P_.c.dot(x_) / tau_;
            sol.pres = rz.norm() / tau_ / hnorm;
            sol.dres = rx.norm() / tau_ / cnorm;
            sol.gap = gap / (tau_ * tau_);
            double relgap = sol.gap / std::max(1.0, std::abs(pcost));
            sol.iters = iter;
            const double err = std::max({sol.pres, sol.dres, std::min(sol.gap, relgap)});
            if (err < best_err) {
                best_err = err;
                best_x = x_;
                best_s = s_;
                best_z = z_;
                best_tau = tau_;
                best_pres = sol.pres;
                best_dres = sol.dres;
                best_gap = sol.gap;
            }
            if (sol.pres <= st_.feastol && sol.dres <= st_.feastol &&
                (sol.gap <= st_.abstol || relgap <= st_.reltol)) {
                sol.status = SolveStatus::kOptimal;
                sol.x = x_ / tau_;
                sol.s = s_ / tau_;
                sol.z = z_ / tau_;
                sol.pobj = pcost;
                return sol;
            }
            if (iter == st_.max_iters) {
                stop = "iteration limit reached";
                break;
            }
            if (tau_ < 1e-10 * std::max(1.0, kappa_)) {
                stop = "tau collapsed (problem nearly infeasible or unbounded)";
                break;
            }

            if (!scal_.compute(layout_, s_, z_)) {
                stop = "iterate left the cone interior";
                break;
            }
            if (!factor()) {
                stop = "KKT factorization failed";
                break;
            }
            // Shared second solve: K u1 = (-c, h).
            RVec u1x(P_.n), u1z(m_);
            solve_K(-P_.c, P_.h, u1x, u1z);
            double den = P_.c.dot(u1x) + P_.h.dot(u1z) - kappa_ / tau_;
            if (!(std::abs(den) > 1e-300)) {
                stop = "degenerate embedding step";
                break;
            }

            const RVec lam_sq = jordan_prod(layout_, scal_.lambda, scal_.lambda);
            const RVec e = layout_.identity();

            // Affine (predictor) direction.
            Dir aff;
            make_direction(-rx, -rz, -rtau, -lam_sq, -tau_ * kappa_, u1x, u1z, den, aff);
            double alpha_aff = std::min(1.0, step_length(aff));
            double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

            // Combined direction with Mehrotra second-order correction.
            RVec ws_aff = scal_.apply(aff.ds, Scaling::Op::WinvT);
            RVec wz_aff = scal_.apply(aff.dz, Scaling::Op::W);
            RVec d_s = -lam_sq - jordan_prod(layout_, ws_aff, wz_aff) + sigma * mu * e;
            double d_kappa = -tau_ * kappa_ - aff.dtau * aff.dkappa + sigma * mu;
            double eta = 1.0 - sigma;
            Dir dir;
            make_direction(-eta * rx, -eta * rz, -eta * rtau, d_s, d_kappa, u1x, u1z, den, dir);

            double alpha = std::min(1.0, st_.step_frac * step_length(dir));
            if (!(alpha > 1e-12)) {
                stop = "step length collapsed";
                break;
            }
            x_ += alpha * dir.dx;
            s_ += alpha * dir.ds;
            z_ += alpha * dir.dz;
            tau_ += alpha * dir.dtau;
            kappa_ += alpha * dir.dkappa;
        }

        // The iteration stopped before the target tolerances. Fall back to
        // the most accurate iterate seen and accept it when good enough.
        sol.message = stop;
        if (best_err <= st_.acceptable) {
            sol.status = SolveStatus::kOptimal;
            sol.message = "accepted at reduced accuracy (" + stop + ")";
        } else {
            sol.status = (stop == "iteration limit reached") ? SolveStatus::kMaxIters
                                                             : SolveStatus::kFailure;
        }
        sol.x = best_x / best_tau;
        sol.s = best_s / best_tau;
        sol.z = best_z / best_tau;
        sol.pres = best_pres;
        sol.dres = best_dres;
        sol.gap = best_gap;
        sol.pobj = P_.c.dot(sol.x);
        return sol;
    }

    /// Dense copy of G (tests and debug dumps).
    RMat dense_G() const {
        RMat G = RMat::Zero(m_, P_.n);
        for (int c = 0; c < P_.n; ++c)
            for (auto [r, v] : P_.cols[c]) G(r, c) += v;
        return G;
    }

    const ConeLayout& layout() const { return layout_; }

  private:
    struct Dir {
        RVec dx, dz, ds;
        double dtau = 0.0, dkappa = 0.0;
    };

    struct PsdPatEntry {
        int p, q;
        double a;
    };

    void build_structure() {
        for (const auto& blk : layout_.blocks()) {
            if (blk.type == ConeBlock::kPsd)
                psd_blocks_.push_back(blk);
            else
                dense_blocks_.push_back(blk);
        }
        dense_rows_ = 0;
        for (const auto& blk : dense_blocks_) dense_rows_ += blk.dim;
        Gd_ = RMat::Zero(dense_rows_, P_.n);
        std::vector<int> dense_row_of(m_, -1);
        int r0 = 0;
        for (const auto& blk : dense_blocks_) {
            for (int i = 0; i < blk.dim; ++i) dense_row_of[blk.offset + i] = r0 + i;
            r0 += blk.dim;
        }
        psd_pat_.assign(psd_blocks_.size(), {});
        psd_active_.assign(psd_blocks_.size(), {});
        for (size_t b = 0; b < psd_blocks_.size(); ++b) psd_pat_[b].assign(P_.n, {});
        for (int c = 0; c < P_.n; ++c) {
            for (auto [r, v] : P_.cols[c]) {
                if (dense_row_of[r] >= 0) {
                    Gd_(dense_row_of[r], c) += v;
                    continue;
                }
                for (size_t b = 0; b < psd_blocks_.size(); ++b) {
                    const auto& blk = psd_blocks_[b];
                    if (r >= blk.offset && r < blk.offset + blk.dim) {
                        auto [i, j] = svec_unindex(r - blk.offset, blk.mat_dim);
                        double a = (i == j) ? v : v / kSqrt2;
                        psd_pat_[b][c].push_back({i, j, a});
                        if (i != j) psd_pat_[b][c].push_back({j, i, a});
                        break;
                    }
                }
            }
        }
        for (size_t b = 0; b < psd_blocks_.size(); ++b)
            for (int c = 0; c < P_.n; ++c)
                if (!psd_pat_[b][c].empty()) psd_active_[b].push_back(c);
    }

    static std::pair<int, int> svec_unindex(int q, int d) {
        int j = 0;
        while (q >= d - j) {
            q -= d - j;
            ++j;
        }
        return {j + q, j};
    }

    RVec gemv(const RVec& x) const {
        RVec y = RVec::Zero(m_);
        for (int c = 0; c < P_.n; ++c) {
            double xc = x(c);
            if (xc == 0.0) continue;
            for (auto [r, v] : P_.cols[c]) y(r) += v * xc;
        }
        return y;
    }

    RVec gemv_t(const RVec& y) const {
        RVec x(P_.n);
        for (int c = 0; c < P_.n; ++c) {
            double acc = 0.0;
            for (auto [r, v] : P_.cols[c]) acc += v * y(r);
            x(c) = acc;
        }
        return x;
    }

    /// Assembles M = G^T (W^T W)^{-1} G and factors it, escalating a ridge on
    /// Cholesky failure.
    bool factor() {
        RMat M = RMat::Zero(P_.n, P_.n);
        if (dense_rows_ > 0) {
            RMat Gt = Gd_;
            int r0 = 0, soc_seen = 0;
            for (const auto& blk : dense_blocks_) {
                if (blk.type == ConeBlock::kNonneg) {
                    const RVec& w = scal_.lp_weights();
                    for (int i = 0; i < blk.dim; ++i) Gt.row(r0 + i) /= w(i);
                } else {
                    const auto& sc = scal_.soc_block(soc_seen++);
                    for (int c = 0; c < P_.n; ++c) {
                        RVec v = Gt.block(r0, c, blk.dim, 1);
                        Gt.block(r0, c, blk.dim, 1) = Scaling::apply_soc(sc, v, true);
                    }
                }
                r0 += blk.dim;
            }
            M.selfadjointView<Eigen::Lower>().rankUpdate(Gt.transpose());
        }
        for (size_t b = 0; b < psd_blocks_.size(); ++b) {
            const auto& ps = scal_.psd_block(static_cast<int>(b));
            RMat U = ps.rti * ps.rti.transpose();
            const auto& act = psd_active_[b];
            for (size_t ia = 0; ia < act.size(); ++ia) {
                const int c1 = act[ia];
                const auto& p1 = psd_pat_[b][c1];
                for (size_t ib = ia; ib < act.size(); ++ib) {
                    const int c2 = act[ib];
                    const auto& p2 = psd_pat_[b][c2];
                    double acc = 0.0;
                    for (const auto& e1 : p1)
                        for (const auto& e2 : p2)
                            acc += e1.a * e2.a * U(e1.q, e2.p) * U(e2.q, e1.p);
                    int lo = std::min(c1, c2), hi = std::max(c1, c2);
                    M(hi, lo) += acc;
                }
            }
        }
        return factor_with_ridge(M);
    }

    bool factor_with_ridge(const RMat& M_lower) {
        RMat Mfull = M_lower.selfadjointView<Eigen::Lower>();
        double ridge = 0.0;
        for (int attempt = 0; attempt < 4; ++attempt) {
            llt_.compute(ridge == 0.0
                             ? Mfull
                             : RMat(Mfull + ridge * RMat::Identity(P_.n, P_.n)));
            if (llt_.info() == Eigen::Success) return true;
            ridge = (ridge == 0.0) ? 1e-14 * (1.0 + Mfull.trace() / P_.n) : ridge * 1e3;
        }
        return false;
    }

    /// Solves
    ///   [0   G^T] [dx]   [p]
    ///   [G -W^TW] [dz] = [q]
    /// with one pass of iterative refinement.
    void solve_K(const RVec& p, const RVec& q, RVec& dx, RVec& dz) const {
        solve_K_raw(p, q, dx, dz);
        RVec r1 = p - gemv_t(dz);
        RVec r2 = q - gemv(dx) + scal_.apply(scal_.apply(dz, Scaling::Op::W), Scaling::Op::Wt);
        RVec cx, cz;
        solve_K_raw(r1, r2, cx, cz);
        dx += cx;
        dz += cz;
    }

    void solve_K_raw(const RVec& p, const RVec& q, RVec& dx, RVec& dz) const {
        RVec y = scal_.apply(scal_.apply(q, Scaling::Op::WinvT), Scaling::Op::Winv);
        dx = llt_.solve(p + gemv_t(y));
        RVec t = gemv(dx) - q;
        dz = scal_.apply(scal_.apply(t, Scaling::Op::WinvT), Scaling::Op::Winv);
    }

    void make_direction(const RVec& bx, const RVec& bz, double btau, const RVec& d_s,
                        double d_kappa, const RVec& u1x, const RVec& u1z, double den,
                        Dir& out) const {
        RVec lam_ds = jordan_solve(layout_, scal_.lambda, d_s);
        RVec bz_t = bz - scal_.apply(lam_ds, Scaling::Op::Wt);
        RVec u0x, u0z;
        solve_K(bx, bz_t, u0x, u0z);
        double num = btau - P_.c.dot(u0x) - P_.h.dot(u0z) - d_kappa / tau_;
        out.dtau = num / den;
        out.dx = u0x + out.dtau * u1x;
        out.dz = u0z + out.dtau * u1z;
        out.ds = scal_.apply(lam_ds - scal_.apply(out.dz, Scaling::Op::W), Scaling::Op::Wt);
        out.dkappa = (d_kappa - kappa_ * out.dtau) / tau_;
    }

    double step_length(const Dir& dir) const {
        RVec ds_scaled = scal_.apply(dir.ds, Scaling::Op::WinvT);
        RVec dz_scaled = scal_.apply(dir.dz, Scaling::Op::W);
        double a = max_step(layout_, scal_.lambda, ds_scaled);
        a = std::min(a, max_step(layout_, scal_.lambda, dz_scaled));
        if (dir.dtau < 0.0) a = std::min(a, -tau_ / dir.dtau);
        if (dir.dkappa < 0.0) a = std::min(a, -kappa_ / dir.dkappa);
        return a;
    }

    /// Least-squares initialization (W = I), shifting s and z into the cone.
    bool initial_point(ConeSolution& sol) {
        scal_.set_identity(layout_);
        RMat G = dense_G();
        RMat M = RMat::Zero(P_.n, P_.n);
        M.selfadjointView<Eigen::Lower>().rankUpdate(G.transpose());
        if (!factor_with_ridge(M)) {
            sol.status = SolveStatus::kFailure;
            sol.message = "initialization factorization failed";
            return false;
        }
        RVec xh = llt_.solve(gemv_t(P_.h));
        RVec sh = P_.h - gemv(xh);
        double shift = layout_.dist_outside(sh);
        s_ = (shift < 0.0) ? sh : RVec(sh + (1.0 + shift) * layout_.identity());
        RVec xd = llt_.solve(-P_.c);
        RVec zh = gemv(xd);
        shift = layout_.dist_outside(zh);
        z_ = (shift < 0.0) ? zh : RVec(zh + (1.0 + shift) * layout_.identity());
        x_ = xh;
        return true;
    }

    const ConeLpData& P_;
    ConeSettings st_;
    ConeLayout layout_;
    int m_ = 0;

    std::vector<ConeBlock> dense_blocks_, psd_blocks_;
    int dense_rows_ = 0;
    RMat Gd_;
    std::vector<std::vector<std::vector<PsdPatEntry>>> psd_pat_;  // [psd block][col]
    std::vector<std::vector<int>> psd_active_;

    Scaling scal_;
    Eigen::LLT<RMat> llt_;

    RVec x_, s_, z_;
    double tau_ = 1.0, kappa_ = 1.0;
};

inline ConeSolution solve_conelp(const ConeLpData& P, const ConeSettings& st = {}) {
    return ConeLpSolver(P, st).solve();
}

}  // namespace irsifc::conic
