#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qwalk {

using Complex = std::complex<double>;

/// 2x2 unitary acting on the coin space.  Unitarity is checked once at
/// construction (entrywise tolerance 1e-12), not per application.
class CoinOperator {
public:
    explicit CoinOperator(const Eigen::Matrix2cd& entries);

    /// (1/sqrt(2)) [[1, 1], [1, -1]].
    static CoinOperator hadamard();
    static CoinOperator identity();
    /// Coin-space exchange |0> <-> |1>.
    static CoinOperator bit_flip();

    const Eigen::Matrix2cd& matrix() const { return m_; }
    Complex entry(int row, int col) const { return m_(row, col); }

private:
    Eigen::Matrix2cd m_;
};

/// Rotation-angle scaling of a coin: the returned coin rotates by
/// (theta + angle_error) about the same axis, theta being the eigenphase
/// gap of `coin`.  Models a systematically mis-timed pulse.  angle_error
/// is in radians; a non-rotating coin (identity up to phase) cannot be
/// over-rotated and is rejected for angle_error != 0.
CoinOperator over_rotate(const CoinOperator& coin, double angle_error);

} // namespace qwalk
