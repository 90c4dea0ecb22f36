#pragma once

// Genus one: the Halphen system for (psi_10, psi_00, psi_01), the theta^4
// difference formulas, and the Legendre modular function
// lambda = (theta_10 / theta_00)^4.
//
// Here delta = (1/pi i) d/dtau and psi_a = delta theta_a / theta_a.

#include <array>
#include <complex>

#include "thetakit/theta.h"

namespace thetakit {

struct HalphenState {
    cplx tau;
    cplx psi10;
    cplx psi00;
    cplx psi01;
};

/// (delta psi_10, delta psi_00, delta psi_01):
///   2(p10 p00 + p10 p01 - p00 p01),
///   2(p10 p00 + p00 p01 - p10 p01),
///   2(p10 p01 + p00 p01 - p10 p00).
std::array<cplx, 3> halphen_rhs(const HalphenState& s);

/// psi values computed from the theta series at tau.
HalphenState theta_seeded_state(cplx tau, double eps = kDefaultEps);

/// Classical RK4 along the segment start.tau -> end_tau with `steps` equal
/// steps, using d psi / d tau = pi i * delta psi. Throws std::domain_error if
/// either endpoint has Im(tau) <= kPositivityMargin and
/// std::invalid_argument for steps < 1.
HalphenState integrate(const HalphenState& start, cplx end_tau, int steps);

/// Relative residuals of
///   theta_00^4 = 4(psi_10 - psi_01), theta_01^4 = 4(psi_10 - psi_00),
///   theta_10^4 = 4(psi_00 - psi_01),
/// plus Jacobi's theta_00^4 = theta_01^4 + theta_10^4.
struct Theta4Residuals {
    std::array<double, 3> formulas{};
    double jacobi = 0.0;
};
Theta4Residuals theta4_differences(cplx tau, double eps = kDefaultEps);

/// lambda = (theta_10 / theta_00)^4
cplx legendre_lambda(cplx tau, double eps = kDefaultEps);

/// Gauss 2F1(a, b; c; z) for real parameters. Sums the power series directly
/// when |z| <= 0.9 and otherwise applies Pfaff's transformation
///   2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
/// when that brings the argument inside |w| <= 0.9. The series is stopped
/// once a geometric bound on the remainder falls below tol * max(1, |sum|).
/// Throws std::domain_error when neither form converges fast enough.
cplx hypergeometric_2f1(double a, double b, double c, cplx z, double tol = 1e-16);

/// True when hypergeometric_2f1 accepts z.
bool hypergeometric_supported(cplx z);

/// Residuals at one tau, each relative to the largest term involved.
struct LegendreResiduals {
    cplx lambda;
    /// (1/pi i) lambda' = 4 lambda (psi_10 - psi_00) vs lambda theta_01^4
    double derivative_theta01 = 0.0;
    /// ... vs lambda (1 - lambda) theta_00^4
    double derivative_theta00 = 0.0;
    /// 4 lambda (psi_10 - psi_00) vs a finite difference of lambda
    double derivative_difference = 0.0;
    /// 2F1(1/2, 1/2; 1; lambda) vs theta_00^2
    double omega = 0.0;
    /// 2F1(-1/2, 1/2; 1; lambda) vs
    ///   (2 theta_00^4 - theta_10^4 + 4 (psi_00 + psi_10 + psi_01)) / (3 theta_00^2)
    double eta = 0.0;
    /// false when lambda lies outside the hypergeometric evaluation region;
    /// omega and eta are then not computed
    bool hypergeometric = false;
};
LegendreResiduals legendre_lambda_checks(cplx tau, double eps = kDefaultEps);

}  // namespace thetakit
