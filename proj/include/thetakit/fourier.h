#pragma once

// Fourier expansions of thetanulls,
//   theta_a(0, tau) = sum_nu c_nu exp(2 pi i Tr(nu tau)),  nu = m m^T / 2,
// with m running over Z^g + a'/2. Exponents are stored exactly as the
// integer matrix 8 nu = 4 m m^T (upper triangle, row-major), which is
// integral for half-integer m.

#include <map>
#include <vector>

#include <gmpxx.h>

#include "thetakit/characteristics.h"
#include "thetakit/siegel.h"
#include "thetakit/theta.h"

namespace thetakit {

/// Upper triangle of 8 nu: genus 1 -> {K11}; genus 2 -> {K11, K12, K22}.
using ExponentKey = std::vector<long>;

/// Largest admissible order per genus.
int max_qexp_order(int genus);

class QExpansion {
public:
    QExpansion(Characteristic a, int order);

    int genus() const { return a_.genus(); }
    int order() const { return order_; }
    const Characteristic& characteristic() const { return a_; }
    /// Exact coefficients; zero coefficients are never stored.
    const std::map<ExponentKey, mpq_class>& coefficients() const { return coeffs_; }

    /// Sum of the stored terms at tau, in key order with compensated summation.
    cplx evaluate(const SiegelPoint& tau) const;

    /// Bound on the omitted terms (those with |m|^2 > order):
    ///   exp(-pi lambda K / 2) * (2 + sqrt(2 / lambda))^g, K = order.
    double tail_bound(const SiegelPoint& tau) const;

private:
    friend QExpansion thetanull_qexp(const Characteristic& a, int order);
    Characteristic a_;
    int order_;
    std::map<ExponentKey, mpq_class> coeffs_;
};

/// Collects every m with |m|^2 <= order. Odd characteristics give an empty
/// expansion. Throws std::invalid_argument for genus > 2, order < 0 or order
/// above max_qexp_order(genus).
QExpansion thetanull_qexp(const Characteristic& a, int order);

struct CrossCheck {
    cplx series;
    cplx expansion;
    double residual = 0.0;
    /// expansion tail + series tail + rounding slack
    double bound = 0.0;
    bool within_bound = false;
};

/// Compares the truncated expansion with the theta series at tau. Throws
/// std::domain_error when the expansion tail exceeds 1e-12.
CrossCheck crosscheck(const Characteristic& a, const SiegelPoint& tau, int order, double eps = kDefaultEps);
/// Same, reusing a precomputed expansion.
CrossCheck crosscheck(const QExpansion& q, const SiegelPoint& tau, double eps = kDefaultEps);

}  // namespace thetakit
