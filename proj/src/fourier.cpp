#include "thetakit/fourier.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "thetakit/summation.h"

namespace thetakit {

int max_qexp_order(int genus) {
    if (genus == 1) return 200;
    if (genus == 2) return 40;
    throw std::invalid_argument("q-expansions are available for genus 1 and 2 only");
}

QExpansion::QExpansion(Characteristic a, int order) : a_(std::move(a)), order_(order) {}

QExpansion thetanull_qexp(const Characteristic& a, int order) {
    const int g = a.genus();
    if (order < 0 || order > max_qexp_order(g)) throw std::invalid_argument("q-expansion order out of range");
    QExpansion out(a, order);
    if (!a.is_even()) return out;

    // Work with 2m, which is an integer vector of the parity of a'.
    const int bound = static_cast<int>(std::floor(2 * std::sqrt(static_cast<double>(order)))) + 1;
    std::vector<long> two_m(static_cast<std::size_t>(g));
    auto visit = [&]() {
        long norm4 = 0;  // 4 |m|^2
        for (long v : two_m) norm4 += v * v;
        if (norm4 > 4L * order) return;
        // exp(pi i m.a'') with m.a'' = (2m).a'' / 2
        long twice_phase = 0;
        for (int j = 0; j < g; ++j) twice_phase += two_m[static_cast<std::size_t>(j)] * a.a_double_prime(j);
        // twice_phase = a'.a'' mod 2, so it is even for even a
        if (twice_phase % 2 != 0) throw std::logic_error("non-real thetanull coefficient");
        const int sign = ((twice_phase / 2) % 2 == 0) ? 1 : -1;
        ExponentKey key;
        for (int j = 0; j < g; ++j)
            for (int l = j; l < g; ++l)
                key.push_back(two_m[static_cast<std::size_t>(j)] * two_m[static_cast<std::size_t>(l)]);
        out.coeffs_[key] += sign;
    };
    for (long x = -bound; x <= bound; ++x) {
        if (((x % 2) != 0) != (a.a_prime(0) == 1)) continue;
        two_m[0] = x;
        if (g == 1) {
            visit();
            continue;
        }
        for (long y = -bound; y <= bound; ++y) {
            if (((y % 2) != 0) != (a.a_prime(1) == 1)) continue;
            two_m[1] = y;
            visit();
        }
    }
    for (auto it = out.coeffs_.begin(); it != out.coeffs_.end();)
        it = (it->second == 0) ? out.coeffs_.erase(it) : std::next(it);
    return out;
}

cplx QExpansion::evaluate(const SiegelPoint& tau) const {
    if (tau.genus() != genus()) throw std::invalid_argument("genus mismatch in q-expansion evaluation");
    const int g = genus();
    CompensatedComplexSum sum;
    for (const auto& [key, c] : coeffs_) {
        // 2 pi i Tr(nu tau) = (2 pi i / 8) (sum_j K_jj tau_jj + 2 sum_{j<l} K_jl tau_jl)
        cplx expo = 0.0;
        std::size_t k = 0;
        for (int j = 0; j < g; ++j)
            for (int l = j; l < g; ++l, ++k) expo += (j == l ? 1.0 : 2.0) * static_cast<double>(key[k]) * tau(j, l);
        const double re_phase = std::remainder(expo.real() / 4.0, 2.0);  // multiples of pi
        const double mag = std::exp(-kPi * expo.imag() / 4.0);
        sum.add(c.get_d() * mag * cplx(std::cos(kPi * re_phase), std::sin(kPi * re_phase)));
    }
    return sum.value();
}

double QExpansion::tail_bound(const SiegelPoint& tau) const {
    const double lambda = tau.lambda_min();
    return std::exp(-kPi * lambda * order_ / 2.0) * std::pow(2.0 + std::sqrt(2.0 / lambda), genus());
}

CrossCheck crosscheck(const Characteristic& a, const SiegelPoint& tau, int order, double eps) {
    return crosscheck(thetanull_qexp(a, order), tau, eps);
}

CrossCheck crosscheck(const QExpansion& q, const SiegelPoint& tau, double eps) {
    if (q.genus() != tau.genus()) throw std::invalid_argument("expansion and tau have different genus");
    const auto& a = q.characteristic();
    const double qtail = q.tail_bound(tau);
    if (qtail > 1e-12) throw std::domain_error("q-expansion tail too large at this tau and order");
    const auto mom = thetanull_moments(a, tau, 0, eps);
    CrossCheck out;
    out.series = mom.s0;
    out.expansion = q.evaluate(tau);
    out.residual = std::abs(out.series - out.expansion);
    // rounding slack: a few ulps per stored term, scaled by the magnitude sum
    double magnitude = 0.0;
    for (const auto& [key, c] : q.coefficients()) {
        double im = 0.0;
        std::size_t k = 0;
        for (int j = 0; j < q.genus(); ++j)
            for (int l = j; l < q.genus(); ++l, ++k)
                im += (j == l ? 1.0 : 2.0) * static_cast<double>(key[k]) * tau(j, l).imag();
        magnitude += std::abs(c.get_d()) * std::exp(-kPi * im / 4.0);
    }
    const double slack = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, magnitude);
    out.bound = qtail + mom.truncation.tail[0] + slack;
    out.within_bound = out.residual <= out.bound;
    return out;
}

}  // namespace thetakit
