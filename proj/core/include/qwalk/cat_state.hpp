#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

/// Binomial expansion of the N-atom product state
/// (a|0> + b|1>)^N = sum_n sqrt(C(N,n)) a^(N-n) b^n |N-n, n>.
/// Coefficients are assembled from log-factorials, so N up to 1e6 evaluates
/// without overflow (vanishing terms underflow to 0).
std::vector<Complex> cat_expansion(Complex a, Complex b, std::int64_t n_atoms);

/// Two-branch macroscopic superposition a^N |N,0> + b^N |0,N|, renormalized.
/// The raw branch weights |a|^2N, |b|^2N are kept as natural logs.
struct CatState {
    std::int64_t n_atoms = 0;
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Complex branch_0{0.0, 0.0}; // amplitude of |N, 0> after renormalization
    Complex branch_1{0.0, 0.0}; // amplitude of |0, N>
    double log_weight_0 = 0.0;  // ln |a|^2N (pre-normalization)
    double log_weight_1 = 0.0;  // ln |b|^2N
};

CatState cat_state(Complex a, Complex b, std::int64_t n_atoms);

} // namespace qwalk
