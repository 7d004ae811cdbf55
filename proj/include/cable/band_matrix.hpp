#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cable {

// Square matrix with two sub- and two super-diagonals. Row r stores the
// entries of columns r-2 .. r+2; slots that fall outside the matrix are zero.
class BandMatrix {
public:
    static constexpr int kHalfWidth = 2;
    static constexpr int kWidth = 2 * kHalfWidth + 1;

    BandMatrix() = default;
    explicit BandMatrix(int n);

    int size() const { return n_; }

    // Zero-based access; |row - col| must not exceed kHalfWidth.
    double& at(int row, int col);
    double at(int row, int col) const;
    // Returns zero outside the band instead of asserting.
    double get(int row, int col) const;

    Eigen::MatrixXd to_dense() const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
    double norm_one() const;

    bool operator==(const BandMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<double> data_;
};

// LU factorisation with partial pivoting of a BandMatrix (LAPACK dgbtrf).
class BandLU {
public:
    explicit BandLU(const BandMatrix& a);

    bool ok() const { return ok_; }
    // Reciprocal condition number estimate in the 1-norm.
    double rcond() const;

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

private:
    int n_ = 0;
    int ldab_ = 0;
    double anorm_ = 0;
    bool ok_ = false;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

}  // namespace cable
