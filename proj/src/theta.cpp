#include "thetakit/theta.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thetakit/summation.h"

namespace thetakit {

namespace {

constexpr double kMaxBoxPoints = 5e7;
// exp of anything below this is exactly 0 in double precision
constexpr double kUnderflowExponent = -746.0;

double shell_envelope(int genus, double t) { return std::pow(2 * t + 1, genus) - std::pow(2 * t - 1, genus); }

bool is_zero_vector(const CVector& z) {
    for (Eigen::Index j = 0; j < z.size(); ++j)
        if (z(j) != cplx(0.0, 0.0)) return false;
    return true;
}

void require_shapes(const Characteristic& a, const CVector& z, const SiegelPoint& tau) {
    if (a.genus() != tau.genus()) throw std::invalid_argument("characteristic genus differs from tau");
    if (z.size() != tau.genus()) throw std::invalid_argument("z length differs from genus");
}

// m is lexicographically positive: its first non-zero coordinate is > 0.
bool lex_positive(const std::vector<double>& m) {
    for (double v : m) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;
}

}  // namespace

double moment_tail_bound(const SiegelPoint& tau, const CVector& z, int radius, int moment) {
    if (radius < 0) throw std::invalid_argument("radius must be non-negative");
    if (moment < 0) throw std::invalid_argument("moment order must be non-negative");
    const int g = tau.genus();
    const double lambda = tau.lambda_min();
    const double r = z.imag().norm();
    double t = radius + 0.5;
    if (t < r / lambda) return std::numeric_limits<double>::infinity();

    CompensatedSum sum;
    double prev = 0.0;
    for (int iter = 0; iter < 1000000; ++iter, t += 0.5) {
        const double term =
            shell_envelope(g, t) * std::pow(t, moment) * std::exp(-kPi * lambda * t * t + 2 * kPi * r * t);
        sum.add(term);
        if (term == 0.0) return sum.value();
        const double ratio = prev > 0 ? term / prev : 1.0;
        // Term ratios are nonincreasing from here on, so the rest is at most
        // term * ratio / (1 - ratio) <= term.
        if (ratio < 0.5 && term < 1e-30 * sum.value()) {
            sum.add(term);
            return sum.value();
        }
        prev = term;
    }
    throw std::runtime_error("tail bound did not converge");
}

Truncation truncation_radius(const SiegelPoint& tau, const CVector& z, double eps, int max_moment) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (max_moment < 0 || max_moment > 4) throw std::invalid_argument("moment order must be in 0..4");
    if (z.size() != tau.genus()) throw std::invalid_argument("z length differs from genus");
    const int g = tau.genus();
    const double r = z.imag().norm();
    const int start = std::max(1, static_cast<int>(std::ceil(r / tau.lambda_min() - 0.5)));
    const double max_radius = (std::pow(kMaxBoxPoints, 1.0 / g) - 1) / 2;
    auto fits = [&](int n) {
        for (int k = 0; k <= max_moment; ++k)
            if (!(moment_tail_bound(tau, z, n, k) <= eps)) return false;
        return true;
    };
    // The tails decrease with n: double until the bound holds, then bisect.
    int lo = start - 1, hi = start;
    while (!fits(hi)) {
        if (hi > max_radius) throw std::domain_error("truncation box too large (ill-conditioned tau or large Im z)");
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (fits(mid) ? hi : lo) = mid;
    }
    if (hi > max_radius) throw std::domain_error("truncation box too large (ill-conditioned tau or large Im z)");
    Truncation tr;
    tr.radius = hi;
    for (int k = 0; k <= 4; ++k) tr.tail[static_cast<std::size_t>(k)] = moment_tail_bound(tau, z, hi, k);
    return tr;
}

ThetaMoments theta_moments(const Characteristic& a, const CVector& z, const SiegelPoint& tau, int max_moment,
                           double eps) {
    require_shapes(a, z, tau);
    if (max_moment != 0 && max_moment != 1 && max_moment != 2 && max_moment != 4)
        throw std::invalid_argument("max_moment must be 0, 1, 2 or 4");
    const int g = tau.genus();
    ThetaMoments out;
    out.truncation = truncation_radius(tau, z, eps, max_moment);
    out.max_moment = max_moment;
    const int n = out.truncation.radius;

    const Eigen::MatrixXd x = tau.tau().real();
    const Eigen::MatrixXd y = tau.tau().imag();
    const Eigen::VectorXd zr = z.real();
    const Eigen::VectorXd zi = z.imag();
    const bool half = is_zero_vector(z);

    // Per-coordinate value lists, ascending.
    std::vector<std::vector<double>> values(static_cast<std::size_t>(g));
    for (int j = 0; j < g; ++j) {
        auto& v = values[static_cast<std::size_t>(j)];
        if (a.a_prime(j))
            for (int k = -n; k < n; ++k) v.push_back(k + 0.5);
        else
            for (int k = -n; k <= n; ++k) v.push_back(k);
    }

    const auto keys = quartic_keys(g);
    CompensatedComplexSum s0;
    std::vector<CompensatedComplexSum> s1(static_cast<std::size_t>(g));
    std::vector<CompensatedComplexSum> s2(static_cast<std::size_t>(g * g));
    std::vector<CompensatedComplexSum> s4(keys.size());

    auto accumulate = [&](const std::vector<double>& m) {
        double quad_x = 0, quad_y = 0, lin_r = 0, lin_i = 0, char_phase = 0;
        for (int j = 0; j < g; ++j) {
            const double mj = m[static_cast<std::size_t>(j)];
            quad_x += x(j, j) * mj * mj;
            quad_y += y(j, j) * mj * mj;
            for (int l = j + 1; l < g; ++l) {
                const double ml = m[static_cast<std::size_t>(l)];
                quad_x += 2 * x(j, l) * mj * ml;
                quad_y += 2 * y(j, l) * mj * ml;
            }
            lin_r += mj * zr(j);
            lin_i += mj * zi(j);
            char_phase += mj * a.a_double_prime(j);
        }
        const double log_mag = -kPi * quad_y - 2 * kPi * lin_i;
        if (log_mag < kUnderflowExponent) return;
        // exp(pi i * phase), phase reduced mod 2 before scaling
        const double phase = std::remainder(quad_x + 2 * lin_r + char_phase, 2.0);
        const cplx term = std::exp(log_mag) * cplx(std::cos(kPi * phase), std::sin(kPi * phase));

        s0.add(term);
        if (max_moment >= 1)
            for (int j = 0; j < g; ++j) s1[static_cast<std::size_t>(j)].add(m[static_cast<std::size_t>(j)] * term);
        if (max_moment >= 2)
            for (int j = 0; j < g; ++j)
                for (int l = j; l < g; ++l)
                    s2[static_cast<std::size_t>(j * g + l)].add(m[static_cast<std::size_t>(j)] *
                                                               m[static_cast<std::size_t>(l)] * term);
        if (max_moment >= 4)
            for (std::size_t k = 0; k < keys.size(); ++k) {
                const auto& key = keys[k];
                s4[k].add(m[static_cast<std::size_t>(key[0])] * m[static_cast<std::size_t>(key[1])] *
                          m[static_cast<std::size_t>(key[2])] * m[static_cast<std::size_t>(key[3])] * term);
            }
    };

    // Odometer over the first g-1 coordinates. For each prefix the magnitude
    // is a concave Gaussian in the last coordinate t; only the interval where
    // it does not underflow is visited.
    const int last = g - 1;
    const auto& last_values = values[static_cast<std::size_t>(last)];
    const double step_origin = last_values.front();
    const double a_coef = kPi * y(last, last);
    std::vector<std::size_t> pos(static_cast<std::size_t>(last), 0);
    std::vector<double> m(static_cast<std::size_t>(g));
    bool done = false;
    while (!done) {
        double cross = 0, quad_prefix = 0, lin_prefix = 0;
        for (int j = 0; j < last; ++j) {
            const double mj = values[static_cast<std::size_t>(j)][pos[static_cast<std::size_t>(j)]];
            m[static_cast<std::size_t>(j)] = mj;
            cross += y(j, last) * mj;
            lin_prefix += mj * zi(j);
            for (int l = j; l < last; ++l) {
                const double ml = values[static_cast<std::size_t>(l)][pos[static_cast<std::size_t>(l)]];
                quad_prefix += (j == l ? 1.0 : 2.0) * y(j, l) * mj * ml;
            }
        }
        // log magnitude = -(a t^2 + b t + c)
        const double b_coef = 2 * kPi * (cross + zi(last));
        const double c_coef = kPi * quad_prefix + 2 * kPi * lin_prefix;
        const double disc = b_coef * b_coef - 4 * a_coef * (c_coef + kUnderflowExponent);
        if (disc >= 0) {
            const double root = std::sqrt(disc);
            const double t_lo = (-b_coef - root) / (2 * a_coef) - 1;
            const double t_hi = (-b_coef + root) / (2 * a_coef) + 1;
            const auto size = static_cast<double>(last_values.size());
            const double first = std::clamp(std::ceil(t_lo - step_origin), 0.0, size);
            const double end = std::clamp(std::floor(t_hi - step_origin) + 1, 0.0, size);
            for (auto k = static_cast<std::size_t>(first); k < static_cast<std::size_t>(end); ++k) {
                m[static_cast<std::size_t>(last)] = last_values[k];
                bool zero = true;
                for (double v : m) zero = zero && v == 0.0;
                if (!half || zero || lex_positive(m)) accumulate(m);
            }
        }

        int j = last - 1;
        while (j >= 0) {
            auto& p = pos[static_cast<std::size_t>(j)];
            if (++p < values[static_cast<std::size_t>(j)].size()) break;
            p = 0;
            --j;
        }
        done = j < 0;
    }

    // Half-lattice folding: an order-k moment picks up 1 + (-1)^{|a|+k}
    // from the pair (m, -m); the m = 0 term only exists for a' = 0.
    auto fold = [&](int k) -> double {
        if (!half) return 1.0;
        return ((a.weight() + k) % 2 == 0) ? 2.0 : 0.0;
    };
    const bool has_origin = a.prime_word() == 0;
    if (half) {
        const cplx origin = has_origin ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        out.s0 = fold(0) == 0.0 ? cplx(0.0, 0.0) : 2.0 * (s0.value() - origin) + origin;
    } else {
        out.s0 = s0.value();
    }
    out.s1 = CVector::Zero(g);
    out.s2 = CMatrix::Zero(g, g);
    out.s4 = QuarticForm(g);
    if (max_moment >= 1)
        for (int j = 0; j < g; ++j) out.s1(j) = fold(1) * s1[static_cast<std::size_t>(j)].value();
    if (max_moment >= 2)
        for (int j = 0; j < g; ++j)
            for (int l = j; l < g; ++l) {
                const cplx v = fold(2) * s2[static_cast<std::size_t>(j * g + l)].value();
                out.s2(j, l) = v;
                out.s2(l, j) = v;
            }
    if (max_moment >= 4)
        for (std::size_t k = 0; k < keys.size(); ++k) {
            const auto& key = keys[k];
            out.s4.set(key[0], key[1], key[2], key[3], fold(4) * s4[k].value());
        }
    return out;
}

ThetaMoments thetanull_moments(const Characteristic& a, const SiegelPoint& tau, int max_moment, double eps) {
    return theta_moments(a, CVector::Zero(tau.genus()), tau, max_moment, eps);
}

ThetaJet theta_jet(const Characteristic& a, const CVector& z, const SiegelPoint& tau, double eps) {
    const auto mom = theta_moments(a, z, tau, 2, eps);
    const cplx two_pi_i = 2.0 * kPi * kI;
    ThetaJet jet;
    jet.value = mom.s0;
    jet.z_gradient = two_pi_i * mom.s1;
    jet.z_hessian = two_pi_i * two_pi_i * mom.s2;
    jet.tail_bound = mom.truncation.tail[0];
    jet.gradient_tail_bound = 2 * kPi * mom.truncation.tail[1];
    jet.hessian_tail_bound = 4 * kPi * kPi * mom.truncation.tail[2];
    jet.radius = mom.truncation.radius;
    return jet;
}

nlohmann::json to_json(const ThetaJet& jet) {
    auto pair = [](cplx v) { return nlohmann::json::array({v.real(), v.imag()}); };
    nlohmann::json grad = nlohmann::json::array(), hess = nlohmann::json::array();
    for (Eigen::Index j = 0; j < jet.z_gradient.size(); ++j) grad.push_back(pair(jet.z_gradient(j)));
    for (Eigen::Index j = 0; j < jet.z_hessian.rows(); ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index l = 0; l < jet.z_hessian.cols(); ++l) row.push_back(pair(jet.z_hessian(j, l)));
        hess.push_back(row);
    }
    return {{"value", pair(jet.value)},
            {"grad", grad},
            {"hess", hess},
            {"tail_bound", jet.tail_bound},
            {"gradient_tail_bound", jet.gradient_tail_bound},
            {"hessian_tail_bound", jet.hessian_tail_bound},
            {"radius", jet.radius}};
}

cplx theta_value(const Characteristic& a, const CVector& z, const SiegelPoint& tau, double eps) {
    return theta_moments(a, z, tau, 0, eps).s0;
}

cplx thetanull(const Characteristic& a, const SiegelPoint& tau, double eps) {
    return thetanull_moments(a, tau, 0, eps).s0;
}

cplx delta_theta(const Characteristic& a, const SiegelPoint& tau, DerivationIndex idx, double eps) {
    if (!a.is_even()) throw std::invalid_argument("delta_theta needs an even characteristic");
    if (idx.l >= tau.genus()) throw std::invalid_argument("derivation index exceeds genus");
    return thetanull_moments(a, tau, 2, eps).s2(idx.j, idx.l);
}

SymmetricForm psi_from_moments(const ThetaMoments& mom) {
    if (mom.max_moment < 2) throw std::invalid_argument("psi needs second moments");
    if (!(std::abs(mom.s0) > 1e3 * mom.truncation.tail[0]))
        throw std::domain_error("thetanull too close to zero for a logarithmic derivative");
    return SymmetricForm(CMatrix(mom.s2 / mom.s0));
}

SymmetricForm psi_matrix(const Characteristic& a, const SiegelPoint& tau, double eps) {
    if (!a.is_even()) throw std::invalid_argument("psi needs an even characteristic");
    return psi_from_moments(thetanull_moments(a, tau, 2, eps));
}

CVector odd_z_gradient(const Characteristic& a, const SiegelPoint& tau, double eps) {
    if (a.is_even()) throw std::invalid_argument("odd_z_gradient needs an odd characteristic");
    return thetanull_moments(a, tau, 1, eps).s1;
}

QuarticForm delta_psi_from_moments(const ThetaMoments& mom) {
    if (mom.max_moment < 4) throw std::invalid_argument("delta psi needs fourth moments");
    const SymmetricForm psi = psi_from_moments(mom);
    return mom.s4 * (1.0 / mom.s0) - psi.square();
}

QuarticForm quartic_delta_psi(const Characteristic& a, const SiegelPoint& tau, double eps) {
    if (!a.is_even()) throw std::invalid_argument("delta psi needs an even characteristic");
    return delta_psi_from_moments(thetanull_moments(a, tau, 4, eps));
}

}  // namespace thetakit
