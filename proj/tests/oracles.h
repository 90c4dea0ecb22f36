#pragma once

// Independent reference computations for the tests. Nothing here shares code
// with the library kernel: plain full-box loops, no parity folding, no
// compensated sums, and 50-digit arithmetic where it matters.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <vector>

#include "thetakit/characteristics.h"
#include "thetakit/siegel.h"

namespace oracle {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;

/// Genus-one theta series summed over |n| <= radius in 50-digit arithmetic.
inline Complex50 theta_genus1(int a_prime, int a_double_prime, const Complex50& tau, const Complex50& z,
                              int radius = 40) {
    using boost::multiprecision::exp;
    const Complex50 pi = boost::math::constants::pi<Real50>();
    const Complex50 i(0, 1);
    Complex50 sum = 0;
    for (int n = -radius; n <= radius; ++n) {
        const Complex50 m = Complex50(n) + Complex50(a_prime) / 2;
        sum += exp(pi * i * m * m * tau + 2 * pi * i * m * (z + Complex50(a_double_prime) / 2));
    }
    return sum;
}

/// theta_00(0, i) = pi^(1/4) / Gamma(3/4).
inline Real50 theta00_at_i_closed_form() {
    const Real50 pi = boost::math::constants::pi<Real50>();
    return boost::multiprecision::pow(pi, Real50(0.25)) / boost::math::tgamma(Real50(0.75));
}

/// Any genus: direct sum over the full box max |n_j| <= radius in long double.
inline std::complex<long double> theta_box(const thetakit::Characteristic& a, const thetakit::CVector& z,
                                           const thetakit::SiegelPoint& tau, int radius) {
    const int g = a.genus();
    const long double pi = 3.141592653589793238462643383279502884L;
    const std::complex<long double> i(0, 1);
    std::vector<int> n(g, -radius);
    std::complex<long double> sum = 0;
    while (true) {
        std::vector<long double> m(g);
        for (int j = 0; j < g; ++j) m[j] = n[j] + a.a_prime(j) / 2.0L;
        std::complex<long double> exponent = 0;
        for (int j = 0; j < g; ++j) {
            for (int l = 0; l < g; ++l)
                exponent += pi * i * m[j] * m[l] * std::complex<long double>(tau(j, l));
            exponent += 2.0L * pi * i * m[j] *
                        (std::complex<long double>(z(j)) + std::complex<long double>(a.a_double_prime(j) / 2.0L));
        }
        sum += std::exp(exponent);
        int k = 0;
        while (k < g && n[k] == radius) n[k++] = -radius;
        if (k == g) break;
        ++n[k];
    }
    return sum;
}

/// Gauss 2F1 power series in 50-digit arithmetic, for real |z| < 1.
inline Real50 hypergeometric_series(const Real50& a, const Real50& b, const Real50& c, const Real50& z,
                                    int terms = 400) {
    Real50 term = 1, sum = 1;
    for (int n = 0; n < terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
    }
    return sum;
}

}  // namespace oracle
