#pragma once

#include <cstdint>

#include "thetakit/siegel.h"

namespace thetakit {

/// Seeded sample points. tau = X + iY with X symmetric, entries uniform in
/// [-real_spread, real_spread]; Y = D + S with D diagonal uniform in
/// [diag_lo, diag_hi] and S symmetric off-diagonal, uniform in
/// [-offdiag_spread, offdiag_spread]. z has real parts in
/// [-z_real, z_real] and imaginary parts in [-z_imag, z_imag].
///
/// Point i depends only on (seed, i, genus), never on evaluation order.
struct SamplePlan {
    std::uint64_t seed = 1;
    int count = 20;
    double real_spread = 1.0;
    double diag_lo = 0.8;
    double diag_hi = 2.0;
    double offdiag_spread = 0.1;
    double z_real = 0.5;
    double z_imag = 0.25;

    SiegelPoint tau(int genus, int index) const;
    CVector z(int genus, int index) const;
    /// Genus-one point drawn like a diagonal entry of tau.
    cplx scalar_tau(int index) const;
    /// A stream seed for auxiliary draws (gamma words, test vectors).
    std::uint64_t stream(int index, std::uint64_t salt) const;
};

}  // namespace thetakit
