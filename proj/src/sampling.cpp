#include "thetakit/sampling.h"

#include "thetakit/random.h"

namespace thetakit {

namespace {
constexpr std::uint64_t kTauSalt = 0x7a75;
constexpr std::uint64_t kZSalt = 0x2d7a;
constexpr std::uint64_t kScalarSalt = 0x5ca1;
}  // namespace

std::uint64_t SamplePlan::stream(int index, std::uint64_t salt) const {
    return mix_seed(mix_seed(seed, salt), static_cast<std::uint64_t>(index));
}

SiegelPoint SamplePlan::tau(int genus, int index) const {
    Rng rng(stream(index, kTauSalt + static_cast<std::uint64_t>(genus)));
    CMatrix t(genus, genus);
    for (int j = 0; j < genus; ++j)
        for (int l = j; l < genus; ++l) {
            const double x = rng.uniform(-real_spread, real_spread);
            const double y = j == l ? rng.uniform(diag_lo, diag_hi) : rng.uniform(-offdiag_spread, offdiag_spread);
            t(j, l) = cplx(x, y);
        }
    return SiegelPoint(t);
}

CVector SamplePlan::z(int genus, int index) const {
    Rng rng(stream(index, kZSalt + static_cast<std::uint64_t>(genus)));
    CVector v(genus);
    for (int j = 0; j < genus; ++j) {
        const double re = rng.uniform(-z_real, z_real);
        v(j) = cplx(re, rng.uniform(-z_imag, z_imag));
    }
    return v;
}

cplx SamplePlan::scalar_tau(int index) const {
    Rng rng(stream(index, kScalarSalt));
    const double re = rng.uniform(-real_spread, real_spread);
    return {re, rng.uniform(diag_lo, diag_hi)};
}

}  // namespace thetakit
