#include "thetakit/halphen.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace thetakit {

namespace {

const Characteristic& char10() {
    static const Characteristic c = Characteristic::from_index(1, 0b10);
    return c;
}
const Characteristic& char00() {
    static const Characteristic c = Characteristic::from_index(1, 0b00);
    return c;
}
const Characteristic& char01() {
    static const Characteristic c = Characteristic::from_index(1, 0b01);
    return c;
}

SiegelPoint genus1(cplx tau) { return SiegelPoint::scalar(1, tau); }

double rel(cplx lhs, cplx rhs, std::initializer_list<double> scales) {
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    for (double s : scales) scale = std::max(scale, s);
    return scale > 0 ? std::abs(lhs - rhs) / scale : 0.0;
}

void require_upper(cplx tau) {
    if (!(tau.imag() > kPositivityMargin)) throw std::domain_error("path leaves the upper half-plane");
}

HalphenState advance(const HalphenState& s, const std::array<cplx, 3>& k, cplx h, cplx dtau) {
    return {s.tau + dtau, s.psi10 + h * k[0], s.psi00 + h * k[1], s.psi01 + h * k[2]};
}

}  // namespace

std::array<cplx, 3> halphen_rhs(const HalphenState& s) {
    const cplx p10 = s.psi10, p00 = s.psi00, p01 = s.psi01;
    return {2.0 * (p10 * p00 + p10 * p01 - p00 * p01), 2.0 * (p10 * p00 + p00 * p01 - p10 * p01),
            2.0 * (p10 * p01 + p00 * p01 - p10 * p00)};
}

HalphenState theta_seeded_state(cplx tau, double eps) {
    const auto pt = genus1(tau);
    return {tau, psi_matrix(char10(), pt, eps)(0, 0), psi_matrix(char00(), pt, eps)(0, 0),
            psi_matrix(char01(), pt, eps)(0, 0)};
}

HalphenState integrate(const HalphenState& start, cplx end_tau, int steps) {
    if (steps < 1) throw std::invalid_argument("steps must be positive");
    require_upper(start.tau);
    require_upper(end_tau);
    const cplx dtau = (end_tau - start.tau) / static_cast<double>(steps);
    // d psi / d tau = pi i * delta psi
    const cplx h = dtau * kPi * kI;
    auto f = [](const HalphenState& s) { return halphen_rhs(s); };
    HalphenState s = start;
    for (int i = 0; i < steps; ++i) {
        const auto k1 = f(s);
        const auto k2 = f(advance(s, k1, h / 2.0, dtau / 2.0));
        const auto k3 = f(advance(s, k2, h / 2.0, dtau / 2.0));
        const auto k4 = f(advance(s, k3, h, dtau));
        s.psi10 += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        s.psi00 += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        s.psi01 += h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
        s.tau = start.tau + dtau * static_cast<double>(i + 1);
    }
    s.tau = end_tau;
    return s;
}

Theta4Residuals theta4_differences(cplx tau, double eps) {
    const auto pt = genus1(tau);
    const cplx t00 = thetanull(char00(), pt, eps), t01 = thetanull(char01(), pt, eps),
               t10 = thetanull(char10(), pt, eps);
    const auto s = theta_seeded_state(tau, eps);
    const cplx f00 = std::pow(t00, 4), f01 = std::pow(t01, 4), f10 = std::pow(t10, 4);
    Theta4Residuals out;
    out.formulas[0] = rel(f00, 4.0 * (s.psi10 - s.psi01), {4 * std::abs(s.psi10), 4 * std::abs(s.psi01)});
    out.formulas[1] = rel(f01, 4.0 * (s.psi10 - s.psi00), {4 * std::abs(s.psi10), 4 * std::abs(s.psi00)});
    out.formulas[2] = rel(f10, 4.0 * (s.psi00 - s.psi01), {4 * std::abs(s.psi00), 4 * std::abs(s.psi01)});
    out.jacobi = rel(f00, f01 + f10, {std::abs(f01), std::abs(f10)});
    return out;
}

cplx legendre_lambda(cplx tau, double eps) {
    const auto pt = genus1(tau);
    return std::pow(thetanull(char10(), pt, eps) / thetanull(char00(), pt, eps), 4);
}

bool hypergeometric_supported(cplx z) {
    return std::abs(z) <= 0.9 || (z != cplx(1.0, 0.0) && std::abs(z / (z - 1.0)) <= 0.9);
}

cplx hypergeometric_2f1(double a, double b, double c, cplx z, double tol) {
    if (std::abs(z) > 0.9) {
        if (z == cplx(1.0, 0.0) || std::abs(z / (z - 1.0)) > 0.9)
            throw std::domain_error("hypergeometric series does not converge fast enough at this argument");
        return std::pow(1.0 - z, -a) * hypergeometric_2f1(a, c - b, c, z / (z - 1.0), tol);
    }
    if (c <= 0 && c == std::floor(c)) throw std::domain_error("2F1 undefined for non-positive integer c");
    const double r = std::abs(z);
    cplx sum = 1.0, term = 1.0;
    for (int n = 0; n < 100000; ++n) {
        const double coeff = (a + n) * (b + n) / ((c + n) * (n + 1.0));
        term *= coeff * z;
        sum += term;
        if (term == cplx(0.0, 0.0)) return sum;
        // Once every later coefficient ratio has modulus <= 1, the remainder
        // is at most |term| r / (1 - r).
        const int k = n + 1;
        const bool ratios_bounded = (a + b - c - 1) <= 0 && k * (a + b - c - 1) + a * b - c <= 0 && a + k > 0 &&
                                    b + k > 0 && c + k > 0;
        if (ratios_bounded && std::abs(term) * r / (1 - r) <= tol * std::max(1.0, std::abs(sum))) return sum;
    }
    throw std::domain_error("hypergeometric series did not converge");
}

LegendreResiduals legendre_lambda_checks(cplx tau, double eps) {
    const auto pt = genus1(tau);
    const cplx t00 = thetanull(char00(), pt, eps), t01 = thetanull(char01(), pt, eps),
               t10 = thetanull(char10(), pt, eps);
    const auto s = theta_seeded_state(tau, eps);
    LegendreResiduals out;
    const cplx lambda = std::pow(t10 / t00, 4);
    out.lambda = lambda;

    const cplx dlambda = 4.0 * lambda * (s.psi10 - s.psi00);
    const cplx via01 = lambda * std::pow(t01, 4);
    const cplx via00 = lambda * (1.0 - lambda) * std::pow(t00, 4);
    out.derivative_theta01 = rel(dlambda, via01, {});
    out.derivative_theta00 = rel(dlambda, via00, {std::abs(lambda * std::pow(t00, 4))});

    const double h = 1e-4;
    auto lam = [&](double k) { return legendre_lambda(tau + k * h, eps); };
    const cplx fd = (-lam(2) + 8.0 * lam(1) - 8.0 * lam(-1) + lam(-2)) / (12.0 * h) / (kPi * kI);
    out.derivative_difference = rel(dlambda, fd, {});

    out.hypergeometric = hypergeometric_supported(lambda);
    if (out.hypergeometric) {
        out.omega = rel(hypergeometric_2f1(0.5, 0.5, 1.0, lambda), t00 * t00, {});
        const cplx t00_4 = std::pow(t00, 4), t10_4 = std::pow(t10, 4);
        const cplx log_deriv = s.psi00 + s.psi10 + s.psi01;
        const cplx rhs = (2.0 * t00_4 - t10_4 + 4.0 * log_deriv) / (3.0 * t00 * t00);
        const double scale = (2 * std::abs(t00_4) + std::abs(t10_4) + 4 * std::abs(log_deriv)) / std::abs(3.0 * t00 * t00);
        out.eta = rel(hypergeometric_2f1(-0.5, 0.5, 1.0, lambda), rhs, {scale});
    }
    return out;
}

}  // namespace thetakit
