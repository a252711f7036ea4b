#include "qwalk/coin.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

bool is_unitary(const Eigen::Matrix2cd& m, double tol) {
    Eigen::Matrix2cd residual = m.adjoint() * m - Eigen::Matrix2cd::Identity();
    return residual.cwiseAbs().maxCoeff() <= tol;
}

} // namespace

CoinOperator::CoinOperator(const Eigen::Matrix2cd& entries) : m_(entries) {
    if (!is_unitary(m_, 1e-12)) {
        throw InvalidArgumentError("coin operator is not unitary within 1e-12");
    }
}

CoinOperator CoinOperator::hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << s, s, s, -s;
    return CoinOperator(m);
}

CoinOperator CoinOperator::identity() {
    return CoinOperator(Eigen::Matrix2cd::Identity());
}

CoinOperator CoinOperator::bit_flip() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 1.0, 0.0;
    return CoinOperator(m);
}

CoinOperator over_rotate(const CoinOperator& coin, double angle_error) {
    if (angle_error == 0.0) {
        return coin;
    }
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(coin.matrix());
    if (es.info() != Eigen::Success) {
        throw NumericError("coin eigendecomposition failed");
    }
    const Complex l0 = es.eigenvalues()(0);
    const Complex l1 = es.eigenvalues()(1);
    // Eigenphases mu +- theta/2; theta is the rotation angle.
    double p0 = std::arg(l0);
    double p1 = std::arg(l1);
    double gap = p1 - p0;
    if (gap > M_PI) gap -= 2.0 * M_PI;
    if (gap < -M_PI) gap += 2.0 * M_PI;
    const double theta = std::abs(gap);
    if (theta < 1e-12) {
        throw InvalidArgumentError(
            "cannot apply a rotation-angle error to a non-rotating coin");
    }
    const double scale = (theta + angle_error) / theta;
    const double mid = p0 + gap / 2.0;
    const Complex i(0.0, 1.0);
    Eigen::Vector2cd scaled;
    scaled(0) = std::exp(i * (mid - scale * gap / 2.0));
    scaled(1) = std::exp(i * (mid + scale * gap / 2.0));
    const Eigen::Matrix2cd v = es.eigenvectors();
    Eigen::Matrix2cd out = v * scaled.asDiagonal() * v.inverse();
    return CoinOperator(out);
}

} // namespace qwalk
