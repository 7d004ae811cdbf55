#include "cable/band_matrix.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace cable {

namespace {
constexpr int kl = BandMatrix::kHalfWidth;
constexpr int ku = BandMatrix::kHalfWidth;
}  // namespace

BandMatrix::BandMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * kWidth, 0.0) {
    if (n < 1) throw std::invalid_argument("BandMatrix: size must be positive");
}

double& BandMatrix::at(int row, int col) {
    assert(row >= 0 && row < n_ && col >= 0 && col < n_);
    assert(std::abs(row - col) <= kHalfWidth);
    return data_[static_cast<std::size_t>(row) * kWidth + (col - row + kHalfWidth)];
}

double BandMatrix::at(int row, int col) const {
    assert(row >= 0 && row < n_ && col >= 0 && col < n_);
    assert(std::abs(row - col) <= kHalfWidth);
    return data_[static_cast<std::size_t>(row) * kWidth + (col - row + kHalfWidth)];
}

double BandMatrix::get(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_) return 0.0;
    if (std::abs(row - col) > kHalfWidth) return 0.0;
    return at(row, col);
}

Eigen::MatrixXd BandMatrix::to_dense() const {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n_, n_);
    for (int r = 0; r < n_; ++r) {
        for (int c = std::max(0, r - kHalfWidth); c <= std::min(n_ - 1, r + kHalfWidth); ++c) {
            dense(r, c) = at(r, c);
        }
    }
    return dense;
}

Eigen::VectorXd BandMatrix::multiply(const Eigen::VectorXd& x) const {
    assert(x.size() == n_);
    Eigen::VectorXd y(n_);
    for (int r = 0; r < n_; ++r) {
        double acc = 0.0;
        for (int c = std::max(0, r - kHalfWidth); c <= std::min(n_ - 1, r + kHalfWidth); ++c) {
            acc += at(r, c) * x[c];
        }
        y[r] = acc;
    }
    return y;
}

Eigen::MatrixXd BandMatrix::multiply(const Eigen::MatrixXd& x) const {
    assert(x.rows() == n_);
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n_, x.cols());
    for (int r = 0; r < n_; ++r) {
        for (int c = std::max(0, r - kHalfWidth); c <= std::min(n_ - 1, r + kHalfWidth); ++c) {
            y.row(r) += at(r, c) * x.row(c);
        }
    }
    return y;
}

double BandMatrix::norm_one() const {
    double best = 0.0;
    for (int c = 0; c < n_; ++c) {
        double col = 0.0;
        for (int r = std::max(0, c - kHalfWidth); r <= std::min(n_ - 1, c + kHalfWidth); ++r) {
            col += std::abs(at(r, c));
        }
        best = std::max(best, col);
    }
    return best;
}

BandLU::BandLU(const BandMatrix& a)
    : n_(a.size()), ldab_(2 * kl + ku + 1), anorm_(a.norm_one()),
      ab_(static_cast<std::size_t>(ldab_) * a.size(), 0.0), ipiv_(a.size(), 0) {
    // LAPACK band storage: AB(kl + ku + i - j, j) = A(i, j), column major.
    for (int j = 0; j < n_; ++j) {
        for (int i = std::max(0, j - ku); i <= std::min(n_ - 1, j + kl); ++i) {
            ab_[static_cast<std::size_t>(j) * ldab_ + (kl + ku + i - j)] = a.at(i, j);
        }
    }
    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl, ku, ab_.data(), ldab_, ipiv_.data());
    ok_ = info == 0;
}

double BandLU::rcond() const {
    if (!ok_) return 0.0;
    double rc = 0.0;
    const lapack_int info =
        LAPACKE_dgbcon(LAPACK_COL_MAJOR, '1', n_, kl, ku, ab_.data(), ldab_, ipiv_.data(), anorm_, &rc);
    return info == 0 ? rc : 0.0;
}

Eigen::VectorXd BandLU::solve(const Eigen::VectorXd& b) const {
    Eigen::MatrixXd x = b;
    return solve(x).col(0);
}

Eigen::MatrixXd BandLU::solve(const Eigen::MatrixXd& b) const {
    if (!ok_) throw std::runtime_error("BandLU: matrix is singular");
    if (b.rows() != n_) throw std::invalid_argument("BandLU: right-hand side has wrong size");
    // Same sequence of operations as dgbtrs, without the per-column BLAS calls.
    constexpr int kd = kl + ku;
    Eigen::MatrixXd x = b;
    const double* ab = ab_.data();
    for (Eigen::Index col = 0; col < x.cols(); ++col) {
        double* v = x.col(col).data();
        for (int j = 0; j < n_ - 1; ++j) {
            const int lm = std::min(kl, n_ - 1 - j);
            const int l = ipiv_[j] - 1;
            if (l != j) std::swap(v[l], v[j]);
            const double vj = v[j];
            const double* colj = ab + static_cast<std::size_t>(j) * ldab_;
            for (int i = 1; i <= lm; ++i) v[j + i] -= colj[kd + i] * vj;
        }
        for (int j = n_ - 1; j >= 0; --j) {
            const double* colj = ab + static_cast<std::size_t>(j) * ldab_;
            v[j] /= colj[kd];
            const double vj = v[j];
            for (int i = std::max(0, j - kd); i < j; ++i) v[i] -= colj[kd + i - j] * vj;
        }
    }
    return x;
}

}  // namespace cable
