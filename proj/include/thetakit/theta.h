#pragma once

// Theta series with half-integer characteristics
//
//   theta_a(z, tau) = sum_{m in Z^g + a'/2} exp(pi i m^T tau m + 2 pi i m^T (z + a''/2))
//
// summed over the box max_j |m_j| <= N with a certified bound on the
// discarded shells. Every derivative used here is a termwise moment
//   S_k = sum m_{j1} ... m_{jk} * term(m),
// since d/dz_j brings down 2 pi i m_j and, by the heat equation, the
// normalized derivation delta_jl brings down m_j m_l.

#include <array>

#include "thetakit/characteristics.h"
#include "thetakit/forms.h"
#include "thetakit/siegel.h"

namespace thetakit {

inline constexpr double kDefaultEps = 1e-14;

/// Box radius N and the bound on what the box leaves out.
struct Truncation {
    int radius = 0;
    /// tail[k] bounds every entry of the discarded part of S_k, k = 0..4.
    std::array<double, 5> tail{};
};

/// Upper bound on the discarded part of any entry of S_k for the box of the
/// given radius:
///   sum_{t = N+1/2, N+1, ...} U(t) t^k exp(-pi lambda t^2 + 2 pi r t),
/// with lambda the smallest eigenvalue of Im(tau), r = |Im z|_2, and
/// U(t) = (2t+1)^g - (2t-1)^g an envelope for the number of lattice points
/// with max_j |m_j| = t. Returns +inf when N + 1/2 < r / lambda.
double moment_tail_bound(const SiegelPoint& tau, const CVector& z, int radius, int moment);

/// Smallest radius N >= 1 with moment_tail_bound(..., k) <= eps for every
/// k <= max_moment. Throws std::invalid_argument for eps <= 0 and
/// std::domain_error if the box would exceed 5e7 points.
Truncation truncation_radius(const SiegelPoint& tau, const CVector& z, double eps, int max_moment = 0);

/// The raw moments S_0, S_1, S_2, S_4 (S_3 is never needed) of one series.
struct ThetaMoments {
    cplx s0 = 0.0;
    CVector s1;
    CMatrix s2;
    QuarticForm s4;
    Truncation truncation;
    int max_moment = 0;
};

/// Computes S_k for k <= max_moment (max_moment in {0,1,2,4}). At z = 0 the
/// sum runs over half the box and uses term(-m) = (-1)^{|a|} term(m), so
/// moments of the wrong parity are exactly zero.
ThetaMoments theta_moments(const Characteristic& a, const CVector& z, const SiegelPoint& tau, int max_moment,
                           double eps = kDefaultEps);
ThetaMoments thetanull_moments(const Characteristic& a, const SiegelPoint& tau, int max_moment,
                               double eps = kDefaultEps);

struct ThetaJet {
    cplx value = 0.0;
    CVector z_gradient;
    CMatrix z_hessian;
    double tail_bound = 0.0;           ///< on value
    double gradient_tail_bound = 0.0;  ///< on each gradient entry
    double hessian_tail_bound = 0.0;   ///< on each Hessian entry
    int radius = 0;
};

ThetaJet theta_jet(const Characteristic& a, const CVector& z, const SiegelPoint& tau, double eps = kDefaultEps);

/// {"value": [re, im], "grad": [[re, im], ...], "hess": [[[re, im], ...], ...],
///  "tail_bound": x, "gradient_tail_bound": x, "hessian_tail_bound": x, "radius": n}
nlohmann::json to_json(const ThetaJet& jet);

cplx theta_value(const Characteristic& a, const CVector& z, const SiegelPoint& tau, double eps = kDefaultEps);
cplx thetanull(const Characteristic& a, const SiegelPoint& tau, double eps = kDefaultEps);

/// delta_jl theta_a(0, tau). Throws std::invalid_argument for odd a.
cplx delta_theta(const Characteristic& a, const SiegelPoint& tau, DerivationIndex idx, double eps = kDefaultEps);

/// psi_a = (delta_jl theta_a / theta_a). Throws std::invalid_argument for odd
/// a and std::domain_error when |theta_a| <= 1e3 * tail bound.
SymmetricForm psi_matrix(const Characteristic& a, const SiegelPoint& tau, double eps = kDefaultEps);
SymmetricForm psi_from_moments(const ThetaMoments& mom);

/// (1/2 pi i) d theta_a / dz_j at z = 0. Throws std::invalid_argument for even a.
CVector odd_z_gradient(const Characteristic& a, const SiegelPoint& tau, double eps = kDefaultEps);

/// The quartic form delta psi_a with coefficients delta_jl psi_{a,mp},
/// symmetrized. From the heat equation,
///   delta_jl psi_mp = S4_jlmp / S0 - psi_jl psi_mp.
QuarticForm quartic_delta_psi(const Characteristic& a, const SiegelPoint& tau, double eps = kDefaultEps);
QuarticForm delta_psi_from_moments(const ThetaMoments& mom);

}  // namespace thetakit
