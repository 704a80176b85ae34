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
// Cone primitives for the interior-point solver: symmetric vectorization,
// the Hermitian-to-real-symmetric lift, block layout of a product cone
// (nonnegative orthant x second-order cones x PSD cones), Nesterov-Todd
// scalings and the Jordan-algebra operations the solver needs.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "irsifc/common.hpp"

namespace irsifc::conic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline const double kSqrt2 = std::sqrt(2.0);

// --------------------------------------------------------------------------
// Symmetric vectorization: lower triangle, column-major, off-diagonal
// entries scaled by sqrt(2) so that svec(X) . svec(Y) = Tr(X Y).
// --------------------------------------------------------------------------

inline int svec_dim(int d) { return d * (d + 1) / 2; }

inline int svec_index(int i, int j, int d) {  // requires i >= j
    return j * d - j * (j - 1) / 2 + (i - j);
}

inline RVec svec(const RMat& X) {
    const int d = static_cast<int>(X.rows());
    RVec v(svec_dim(d));
    int q = 0;
    for (int j = 0; j < d; ++j) {
        v(q++) = X(j, j);
        for (int i = j + 1; i < d; ++i) v(q++) = kSqrt2 * X(i, j);
    }
    return v;
}

inline RMat smat(const RVec& v, int d) {
    RMat X(d, d);
    int q = 0;
    for (int j = 0; j < d; ++j) {
        X(j, j) = v(q++);
        for (int i = j + 1; i < d; ++i) {
            X(i, j) = X(j, i) = v(q++) / kSqrt2;
        }
    }
    return X;
}

// --------------------------------------------------------------------------
// Hermitian H = A + iB maps to the real symmetric [[A, -B], [B, A]] of twice
// the dimension; H is PSD iff the lift is PSD and each eigenvalue doubles.
// --------------------------------------------------------------------------

inline RMat hermitian_real_lift(const CMat& H) {
    const Eigen::Index d = H.rows();
    RMat T(2 * d, 2 * d);
    const RMat A = H.real();
    const RMat B = H.imag();
    T.topLeftCorner(d, d) = A;
    T.topRightCorner(d, d) = -B;
    T.bottomLeftCorner(d, d) = B;
    T.bottomRightCorner(d, d) = A;
    return T;
}

inline CMat hermitian_real_unlift(const RMat& T) {
    const Eigen::Index d = T.rows() / 2;
    if (T.rows() != 2 * d || T.cols() != 2 * d)
        throw InvalidInput("hermitian_real_unlift: matrix dimension must be even");
    const RMat A = 0.5 * (T.topLeftCorner(d, d) + T.bottomRightCorner(d, d));
    const RMat B = 0.5 * (T.bottomLeftCorner(d, d) - T.topRightCorner(d, d));
    CMat H(d, d);
    H.real() = A;
    H.imag() = B;
    return H;
}

// --------------------------------------------------------------------------
// Product-cone layout
// --------------------------------------------------------------------------

struct ConeDims {
    int nonneg = 0;
    std::vector<int> soc;  // vector dimensions (>= 1 each)
    std::vector<int> psd;  // matrix dimensions
};

struct ConeBlock {
    enum Type { kNonneg, kSoc, kPsd } type;
    int offset;   // start in the stacked slack vector
    int dim;      // vector length of the block
    int mat_dim;  // PSD only
};

class ConeLayout {
  public:
    ConeLayout() = default;
    explicit ConeLayout(const ConeDims& dims) {
        int off = 0;
        if (dims.nonneg > 0) {
            blocks_.push_back({ConeBlock::kNonneg, off, dims.nonneg, 0});
            off += dims.nonneg;
            degree_ += dims.nonneg;
        }
        for (int d : dims.soc) {
            if (d < 1) throw InvalidInput("ConeLayout: SOC dimension must be >= 1");
            blocks_.push_back({ConeBlock::kSoc, off, d, 0});
            off += d;
            degree_ += 1;
        }
        for (int d : dims.psd) {
            if (d < 1) throw InvalidInput("ConeLayout: PSD dimension must be >= 1");
            blocks_.push_back({ConeBlock::kPsd, off, svec_dim(d), d});
            off += svec_dim(d);
            degree_ += d;
        }
        m_ = off;
    }

    int m() const { return m_; }
    int degree() const { return degree_; }
    const std::vector<ConeBlock>& blocks() const { return blocks_; }

    /// Identity element of the cone's Jordan algebra.
    RVec identity() const {
        RVec e = RVec::Zero(m_);
        for (const auto& b : blocks_) {
            switch (b.type) {
                case ConeBlock::kNonneg:
                    e.segment(b.offset, b.dim).setOnes();
                    break;
                case ConeBlock::kSoc:
                    e(b.offset) = 1.0;
                    break;
                case ConeBlock::kPsd:
                    for (int j = 0, q = 0; j < b.mat_dim; ++j) {
                        e(b.offset + q) = 1.0;
                        q += b.mat_dim - j;
                    }
                    break;
            }
        }
        return e;
    }

    /// Smallest t such that u + t * identity() is in the cone
    /// (negative when u is interior).
    double dist_outside(const RVec& u) const {
        double t = -kInf;
        for (const auto& b : blocks_) {
            switch (b.type) {
                case ConeBlock::kNonneg:
                    t = std::max(t, -u.segment(b.offset, b.dim).minCoeff());
                    break;
                case ConeBlock::kSoc: {
                    double tail = b.dim > 1 ? u.segment(b.offset + 1, b.dim - 1).norm() : 0.0;
                    t = std::max(t, tail - u(b.offset));
                    break;
                }
                case ConeBlock::kPsd: {
                    RMat X = smat(u.segment(b.offset, b.dim), b.mat_dim);
                    Eigen::SelfAdjointEigenSolver<RMat> es(X, Eigen::EigenvaluesOnly);
                    t = std::max(t, -es.eigenvalues().minCoeff());
                    break;
                }
            }
        }
        return t;
    }

  private:
    std::vector<ConeBlock> blocks_;
    int m_ = 0;
    int degree_ = 0;
};

// --------------------------------------------------------------------------
// Nesterov-Todd scaling. For each block the scaled point is
// lambda = W z = W^{-T} s.
// --------------------------------------------------------------------------

struct SocScalingBlock {
    double beta = 1.0;  // W = beta * (2 v v^T - J)
    RVec v;             // hyperbolic Householder vector, v^T J v = 1
};

struct PsdScalingBlock {
    RMat r, rti;  // rti = r^{-T}; r^T Z r = diag(lambda), rti^T S rti = diag(lambda)
};

class Scaling {
  public:
    /// Computes NT scalings for interior s, z. Returns false when a block is
    /// numerically outside the cone (Cholesky/normalization failure).
    bool compute(const ConeLayout& layout, const RVec& s, const RVec& z) {
        layout_ = &layout;
        lambda.resize(layout.m());
        lp_w_.resize(0);
        soc_.clear();
        psd_.clear();
        identity_ = false;
        for (const auto& b : layout.blocks()) {
            switch (b.type) {
                case ConeBlock::kNonneg: {
                    lp_w_.resize(b.dim);
                    for (int i = 0; i < b.dim; ++i) {
                        double si = s(b.offset + i), zi = z(b.offset + i);
                        if (!(si > 0.0) || !(zi > 0.0)) return false;
                        lp_w_(i) = std::sqrt(si / zi);
                        lambda(b.offset + i) = std::sqrt(si * zi);
                    }
                    break;
                }
                case ConeBlock::kSoc: {
                    const RVec sb = s.segment(b.offset, b.dim);
                    const RVec zb = z.segment(b.offset, b.dim);
                    double a2 = jdot(sb, sb), b2 = jdot(zb, zb);
                    if (!(a2 > 0.0) || !(b2 > 0.0) || !(sb(0) > 0.0) || !(zb(0) > 0.0))
                        return false;
                    double anrm = std::sqrt(a2), bnrm = std::sqrt(b2);
                    RVec sbar = sb / anrm, zbar = zb / bnrm;
                    double gamma = std::sqrt((1.0 + sbar.dot(zbar)) * 0.5);
                    if (!(gamma > 0.0)) return false;
                    RVec wbar = (sbar + jmul(zbar)) / (2.0 * gamma);
                    SocScalingBlock sc;
                    sc.beta = std::sqrt(anrm / bnrm);
                    sc.v = wbar;
                    sc.v(0) += 1.0;
                    sc.v /= std::sqrt(2.0 * (wbar(0) + 1.0));
                    soc_.push_back(std::move(sc));
                    lambda.segment(b.offset, b.dim) = apply_soc(soc_.back(), zb, false);
                    break;
                }
                case ConeBlock::kPsd: {
                    RMat S = smat(s.segment(b.offset, b.dim), b.mat_dim);
                    RMat Z = smat(z.segment(b.offset, b.dim), b.mat_dim);
                    Eigen::LLT<RMat> ls(S), lz(Z);
                    if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
                    RMat Ls = ls.matrixL();
                    RMat Lz = lz.matrixL();
                    Eigen::JacobiSVD<RMat> svd(Lz.transpose() * Ls,
                                               Eigen::ComputeFullU | Eigen::ComputeFullV);
                    RVec sig = svd.singularValues();
                    if (!(sig.minCoeff() > 0.0)) return false;
                    RVec isqrt = sig.array().sqrt().inverse().matrix();
                    PsdScalingBlock ps;
                    ps.r = Ls * svd.matrixV() * isqrt.asDiagonal();
                    ps.rti = Lz * svd.matrixU() * isqrt.asDiagonal();
                    psd_.push_back(std::move(ps));
                    RVec lam = RVec::Zero(b.dim);
                    for (int j = 0, q = 0; j < b.mat_dim; ++j) {
                        lam(q) = sig(j);
                        q += b.mat_dim - j;
                    }
                    lambda.segment(b.offset, b.dim) = lam;
                    break;
                }
            }
        }
        return true;
    }

    /// Identity scaling (W = I, lambda unused) for the initialization solves.
    void set_identity(const ConeLayout& layout) {
        layout_ = &layout;
        identity_ = true;
    }

    enum class Op { W, Wt, Winv, WinvT };

    /// Applies the requested scaling operator block-wise to a stacked vector.
    RVec apply(const RVec& u, Op op) const {
        if (identity_) return u;
        RVec out(u.size());
        int soc_idx = 0, psd_idx = 0;
        for (const auto& b : layout_->blocks()) {
            switch (b.type) {
                case ConeBlock::kNonneg:
                    for (int i = 0; i < b.dim; ++i) {
                        double w = lp_w_(i);
                        double f = (op == Op::W || op == Op::Wt) ? w : 1.0 / w;
                        out(b.offset + i) = u(b.offset + i) * f;
                    }
                    break;
                case ConeBlock::kSoc: {
                    const auto& sc = soc_[soc_idx++];
                    bool inv = (op == Op::Winv || op == Op::WinvT);
                    out.segment(b.offset, b.dim) =
                        apply_soc(sc, u.segment(b.offset, b.dim), inv);
                    break;
                }
                case ConeBlock::kPsd: {
                    const auto& ps = psd_[psd_idx++];
                    RMat X = smat(u.segment(b.offset, b.dim), b.mat_dim);
                    RMat Y;
                    switch (op) {
                        case Op::W: Y = ps.r.transpose() * X * ps.r; break;
                        case Op::Wt: Y = ps.r * X * ps.r.transpose(); break;
                        case Op::Winv: Y = ps.rti * X * ps.rti.transpose(); break;
                        case Op::WinvT: Y = ps.rti.transpose() * X * ps.rti; break;
                    }
                    out.segment(b.offset, b.dim) = svec(0.5 * (Y + Y.transpose()));
                    break;
                }
            }
        }
        return out;
    }

    const PsdScalingBlock& psd_block(int idx) const { return psd_[idx]; }
    const SocScalingBlock& soc_block(int idx) const { return soc_[idx]; }
    const RVec& lp_weights() const { return lp_w_; }

    // W u = beta * (2 v (v^T u) - J u); W^{-1} u = (1/beta) J H J u. W is symmetric.
    static RVec apply_soc(const SocScalingBlock& sc, const RVec& u, bool inverse) {
        if (!inverse) {
            RVec r = 2.0 * sc.v * sc.v.dot(u) - jmul(u);
            return sc.beta * r;
        }
        RVec ju = jmul(u);
        RVec hju = 2.0 * sc.v * sc.v.dot(ju) - jmul(ju);
        return jmul(hju) / sc.beta;
    }

    RVec lambda;  // scaled point; PSD blocks hold the diagonal only

  private:
    static double jdot(const RVec& a, const RVec& b) {
        double d = a(0) * b(0);
        for (Eigen::Index i = 1; i < a.size(); ++i) d -= a(i) * b(i);
        return d;
    }
    static RVec jmul(const RVec& a) {
        RVec r = -a;
        r(0) = a(0);
        return r;
    }

    const ConeLayout* layout_ = nullptr;
    bool identity_ = false;
    RVec lp_w_;
    std::vector<SocScalingBlock> soc_;
    std::vector<PsdScalingBlock> psd_;
};

// --------------------------------------------------------------------------
// Jordan-algebra operations in the scaled frame. PSD blocks of `lambda`
// arguments must be diagonal (as produced by Scaling::compute).
// --------------------------------------------------------------------------

/// a o b; for PSD blocks the symmetrized matrix product.
inline RVec jordan_prod(const ConeLayout& layout, const RVec& a, const RVec& b) {
    RVec out(a.size());
    for (const auto& blk : layout.blocks()) {
        switch (blk.type) {
            case ConeBlock::kNonneg:
                out.segment(blk.offset, blk.dim) =
                    a.segment(blk.offset, blk.dim).cwiseProduct(b.segment(blk.offset, blk.dim));
                break;
            case ConeBlock::kSoc: {
                const RVec ab = a.segment(blk.offset, blk.dim);
                const RVec bb = b.segment(blk.offset, blk.dim);
                RVec r(blk.dim);
                r(0) = ab.dot(bb);
                for (int i = 1; i < blk.dim; ++i) r(i) = ab(0) * bb(i) + bb(0) * ab(i);
                out.segment(blk.offset, blk.dim) = r;
                break;
            }
            case ConeBlock::kPsd: {
                RMat A = smat(a.segment(blk.offset, blk.dim), blk.mat_dim);
                RMat B = smat(b.segment(blk.offset, blk.dim), blk.mat_dim);
                RMat P = 0.5 * (A * B + B * A);
                out.segment(blk.offset, blk.dim) = svec(P);
                break;
            }
        }
    }
    return out;
}

/// Solves lambda o x = d for x. PSD blocks of lambda must be diagonal.
inline RVec jordan_solve(const ConeLayout& layout, const RVec& lambda, const RVec& d) {
    RVec out(d.size());
    for (const auto& blk : layout.blocks()) {
        switch (blk.type) {
            case ConeBlock::kNonneg:
                out.segment(blk.offset, blk.dim) =
                    d.segment(blk.offset, blk.dim).cwiseQuotient(lambda.segment(blk.offset, blk.dim));
                break;
            case ConeBlock::kSoc: {
                const RVec lb = lambda.segment(blk.offset, blk.dim);
                const RVec db = d.segment(blk.offset, blk.dim);
                double l0 = lb(0);
                double det = l0 * l0 - (blk.dim > 1 ? lb.segment(1, blk.dim - 1).squaredNorm() : 0.0);
                RVec x(blk.dim);
                double lbar_d = l0 * db(0);
                for (int i = 1; i < blk.dim; ++i) lbar_d -= lb(i) * db(i);
                x(0) = lbar_d / det;
                for (int i = 1; i < blk.dim; ++i) x(i) = (db(i) - x(0) * lb(i)) / l0;
                out.segment(blk.offset, blk.dim) = x;
                break;
            }
            case ConeBlock::kPsd: {
                // lambda diagonal: X_ij = 2 D_ij / (lam_i + lam_j)
                RVec lam(blk.mat_dim);
                for (int j = 0, q = 0; j < blk.mat_dim; ++j) {
                    lam(j) = lambda(blk.offset + q);
                    q += blk.mat_dim - j;
                }
                RMat D = smat(d.segment(blk.offset, blk.dim), blk.mat_dim);
                RMat X(blk.mat_dim, blk.mat_dim);
                for (int i = 0; i < blk.mat_dim; ++i)
                    for (int j = 0; j < blk.mat_dim; ++j)
                        X(i, j) = 2.0 * D(i, j) / (lam(i) + lam(j));
                out.segment(blk.offset, blk.dim) = svec(X);
                break;
            }
        }
    }
    return out;
}

/// Largest alpha such that lambda + alpha * du stays in the cone
/// (kInf when the whole ray stays inside). lambda must be interior with
/// diagonal PSD blocks.
inline double max_step(const ConeLayout& layout, const RVec& lambda, const RVec& du) {
    double amax = kInf;
    for (const auto& blk : layout.blocks()) {
        switch (blk.type) {
            case ConeBlock::kNonneg:
                for (int i = 0; i < blk.dim; ++i) {
                    double d = du(blk.offset + i);
                    if (d < 0.0) amax = std::min(amax, -lambda(blk.offset + i) / d);
                }
                break;
            case ConeBlock::kSoc: {
                const RVec lb = lambda.segment(blk.offset, blk.dim);
                const RVec db = du.segment(blk.offset, blk.dim);
                int n = blk.dim - 1;
                double a = db(0) * db(0) - (n ? db.segment(1, n).squaredNorm() : 0.0);
                double b = 2.0 * (lb(0) * db(0) - (n ? lb.segment(1, n).dot(db.segment(1, n)) : 0.0));
                double c = lb(0) * lb(0) - (n ? lb.segment(1, n).squaredNorm() : 0.0);
                double root = kInf;
                if (std::abs(a) < 1e-14 * (std::abs(b) + std::abs(c))) {
                    if (b < 0.0) root = -c / b;
                } else {
                    double disc = b * b - 4.0 * a * c;
                    if (disc >= 0.0) {
                        double sq = std::sqrt(disc);
                        double q = -0.5 * (b + (b >= 0 ? sq : -sq));
                        double r1 = q / a;
                        double r2 = (q != 0.0) ? c / q : kInf;
                        if (r1 > r2) std::swap(r1, r2);
                        if (r1 > 0.0)
                            root = r1;
                        else if (r2 > 0.0 && a < 0.0)
                            root = r2;
                    }
                }
                // The cone boundary may also be hit where the first component
                // vanishes before the quadratic does.
                if (db(0) < 0.0) root = std::min(root, -lb(0) / db(0));
                amax = std::min(amax, root);
                break;
            }
            case ConeBlock::kPsd: {
                RVec lam(blk.mat_dim);
                for (int j = 0, q = 0; j < blk.mat_dim; ++j) {
                    lam(j) = lambda(blk.offset + q);
                    q += blk.mat_dim - j;
                }
                RMat D = smat(du.segment(blk.offset, blk.dim), blk.mat_dim);
                RVec is = lam.array().sqrt().inverse().matrix();
                RMat S = is.asDiagonal() * D * is.asDiagonal();
                Eigen::SelfAdjointEigenSolver<RMat> es(S, Eigen::EigenvaluesOnly);
                double mineig = es.eigenvalues().minCoeff();
                if (mineig < 0.0) amax = std::min(amax, -1.0 / mineig);
                break;
            }
        }
    }
    return amax;
}

}  // namespace irsifc::conic
