#pragma once

// Shared plumbing for the identity check families.

#include <string>
#include <vector>

#include "thetakit/characteristics.h"
#include "thetakit/identities.h"

namespace thetakit::checks {

/// Moments of every characteristic of one genus at one tau.
class ThetanullTable {
public:
    ThetanullTable(const SiegelPoint& tau, int max_moment, double eps);

    int genus() const { return genus_; }
    cplx theta(const Characteristic& a) const { return at(a).s0; }
    cplx theta(const char* label) const { return theta(digit_decode(label)); }
    const SymmetricForm& psi(const Characteristic& a) const;
    const SymmetricForm& psi(const char* label) const { return psi(digit_decode(label)); }
    QuarticForm delta_psi(const Characteristic& a) const;
    /// (1/2 pi i) grad theta_a(0) for odd a.
    const CVector& gradient(const Characteristic& a) const { return at(a).s1; }

private:
    const ThetaMoments& at(const Characteristic& a) const;
    int genus_;
    std::vector<ThetaMoments> moments_;
    std::vector<SymmetricForm> psi_;
};

/// Runs fn(i, tracker) for every sample index and assembles the report.
IdentityCheck sampled(const std::string& name, const CheckConfig& cfg,
                      const std::function<void(int, ResidualTracker&)>& fn);

/// max(|x_1|, ..., |x_n|)
double largest(std::initializer_list<double> xs);

std::string label(const Characteristic& a);

/// 5-point central difference of f at 0 with step h.
cplx central_difference(const std::function<cplx(double)>& f, double h);

IdentityCheck heat_equation(const CheckConfig& cfg);
IdentityCheck riemann_quartic(const CheckConfig& cfg);
IdentityCheck delta_psi_system(const CheckConfig& cfg);
IdentityCheck odd_gradient_squares(const CheckConfig& cfg);
IdentityCheck odd_gradient_fourth_powers(const CheckConfig& cfg);
IdentityCheck eta_scalar_diagonal(const CheckConfig& cfg);
IdentityCheck delta_lambda_transformation(const CheckConfig& cfg);
IdentityCheck transformation_weight2(const CheckConfig& cfg);
IdentityCheck legendre_weight2(const CheckConfig& cfg);

IdentityCheck gopel_system_sum(const CheckConfig& cfg);
IdentityCheck gopel_explicit(const CheckConfig& cfg);
IdentityCheck thetanull_quadratic(const CheckConfig& cfg);
IdentityCheck thetanull_quartic(const CheckConfig& cfg);
IdentityCheck eta_quotients(const CheckConfig& cfg);
IdentityCheck eta_gopel_products(const CheckConfig& cfg);
IdentityCheck theta72_product(const CheckConfig& cfg);
IdentityCheck chi_relation(const CheckConfig& cfg);
IdentityCheck chi_theta03_leading(const CheckConfig& cfg);
IdentityCheck phi_relation(const CheckConfig& cfg);
IdentityCheck phi_scalar_leading(const CheckConfig& cfg);

IdentityCheck halphen_theta4(const CheckConfig& cfg);
IdentityCheck halphen_system(const CheckConfig& cfg);
IdentityCheck halphen_rk4(const CheckConfig& cfg);
IdentityCheck legendre_lambda(const CheckConfig& cfg);
IdentityCheck fourier_crosscheck(const CheckConfig& cfg);

}  // namespace thetakit::checks
