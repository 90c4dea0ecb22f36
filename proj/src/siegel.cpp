#include "thetakit/siegel.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "thetakit/random.h"

namespace thetakit {

namespace {

double smallest_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("integer matrix overflow");
    return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("integer matrix overflow");
    return out;
}

std::int64_t mod(std::int64_t x, std::int64_t m) {
    const auto r = x % m;
    return r < 0 ? r + m : r;
}

CMatrix to_complex(const IntMatrix& m) {
    CMatrix out(m.size(), m.size());
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c) out(r, c) = static_cast<double>(m(r, c));
    return out;
}

bool is_symmetric(const IntMatrix& m) { return m == m.transpose(); }

}  // namespace

// --- SiegelPoint ---------------------------------------------------------

SiegelPoint::SiegelPoint(const CMatrix& tau) : tau_(tau), lambda_min_(0.0) {
    if (tau.rows() != tau.cols() || tau.rows() < 1)
        throw std::invalid_argument("tau must be a non-empty square matrix");
    const auto g = tau.rows();
    for (Eigen::Index j = 0; j < g; ++j)
        for (Eigen::Index l = 0; l < j; ++l) tau_(j, l) = tau_(l, j);
    for (Eigen::Index j = 0; j < g; ++j)
        for (Eigen::Index l = 0; l < g; ++l)
            if (!std::isfinite(tau_(j, l).real()) || !std::isfinite(tau_(j, l).imag()))
                throw std::invalid_argument("tau has non-finite entries");
    lambda_min_ = smallest_eigenvalue(tau_.imag());
    if (!(lambda_min_ > kPositivityMargin))
        throw std::domain_error("Im(tau) is not positive definite (smallest eigenvalue " +
                                std::to_string(lambda_min_) + ")");
}

SiegelPoint SiegelPoint::scalar(int genus, cplx tau) {
    return SiegelPoint(CMatrix::Identity(genus, genus) * tau);
}

SiegelPoint SiegelPoint::shifted(int j, int l, cplx h) const {
    CMatrix t = tau_;
    t(j, l) += h;
    if (j != l) t(l, j) += h;
    return SiegelPoint(t);
}

nlohmann::json to_json(const SiegelPoint& tau) {
    nlohmann::json entries = nlohmann::json::array();
    for (int j = 0; j < tau.genus(); ++j)
        for (int l = 0; l < tau.genus(); ++l) entries.push_back({tau(j, l).real(), tau(j, l).imag()});
    return {{"genus", tau.genus()}, {"tau", entries}};
}

SiegelPoint siegel_point_from_json(const nlohmann::json& j) {
    const int g = j.at("genus").get<int>();
    if (g < 1) throw std::invalid_argument("genus must be positive");
    const auto& entries = j.at("tau");
    std::vector<cplx> flat;
    for (const auto& item : entries) {
        if (item.is_array() && !item.empty() && item[0].is_array()) {
            for (const auto& inner : item) flat.emplace_back(inner.at(0).get<double>(), inner.at(1).get<double>());
        } else {
            flat.emplace_back(item.at(0).get<double>(), item.at(1).get<double>());
        }
    }
    if (static_cast<int>(flat.size()) != g * g)
        throw std::invalid_argument("tau must have genus^2 entries");
    CMatrix tau(g, g);
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) tau(r, c) = flat[static_cast<std::size_t>(r * g + c)];
    const double scale = std::max(1.0, tau.cwiseAbs().maxCoeff());
    if ((tau - tau.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("tau is not symmetric");
    return SiegelPoint(tau);
}

// --- DerivationIndex -----------------------------------------------------

DerivationIndex::DerivationIndex(int j_, int l_) : j(std::min(j_, l_)), l(std::max(j_, l_)) {
    if (j < 0) throw std::invalid_argument("derivation index must be non-negative");
}

cplx DerivationIndex::normalization() const {
    return 1.0 / ((diagonal() ? 1.0 : 2.0) * kPi * kI);
}

int DerivationIndex::flat(int genus) const {
    if (l >= genus) throw std::invalid_argument("derivation index exceeds genus");
    if (diagonal()) return j;
    int k = genus;
    for (int jj = 0; jj < genus; ++jj)
        for (int ll = jj + 1; ll < genus; ++ll, ++k)
            if (jj == j && ll == l) return k;
    return -1;
}

DerivationIndex DerivationIndex::from_flat(int genus, int k) {
    if (k < 0 || k >= derivation_count(genus)) throw std::invalid_argument("flat derivation index out of range");
    if (k < genus) return {k, k};
    int pos = genus;
    for (int jj = 0; jj < genus; ++jj)
        for (int ll = jj + 1; ll < genus; ++ll, ++pos)
            if (pos == k) return {jj, ll};
    throw std::logic_error("unreachable");
}

// --- IntMatrix / SymplecticMatrix ----------------------------------------

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("integer matrix size mismatch");
    IntMatrix out(n_);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            std::int64_t acc = 0;
            for (int k = 0; k < n_; ++k) acc = checked_add(acc, checked_mul((*this)(r, k), rhs(k, c)));
            out(r, c) = acc;
        }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(n_);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

bool is_symplectic(const IntMatrix& gamma) {
    const int n = gamma.size();
    if (n == 0 || n % 2) return false;
    const int g = n / 2;
    IntMatrix j(n);
    for (int i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return gamma.transpose() * j * gamma == j;
}

SymplecticMatrix::SymplecticMatrix(IntMatrix gamma) : gamma_(std::move(gamma)) {
    if (!is_symplectic(gamma_)) throw std::invalid_argument("matrix is not symplectic");
}

SymplecticMatrix SymplecticMatrix::identity(int genus) { return SymplecticMatrix(IntMatrix::identity(2 * genus)); }

SymplecticMatrix SymplecticMatrix::upper_unipotent(const IntMatrix& b) {
    if (!is_symmetric(b)) throw std::invalid_argument("translation block must be symmetric");
    const int g = b.size();
    IntMatrix m = IntMatrix::identity(2 * g);
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) m(r, g + c) = b(r, c);
    return SymplecticMatrix(m);
}

SymplecticMatrix SymplecticMatrix::lower_unipotent(const IntMatrix& c) {
    if (!is_symmetric(c)) throw std::invalid_argument("lower block must be symmetric");
    const int g = c.size();
    IntMatrix m = IntMatrix::identity(2 * g);
    for (int r = 0; r < g; ++r)
        for (int col = 0; col < g; ++col) m(g + r, col) = c(r, col);
    return SymplecticMatrix(m);
}

IntMatrix SymplecticMatrix::block(int row, int col) const {
    const int g = genus();
    IntMatrix out(g);
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) out(r, c) = gamma_(row * g + r, col * g + c);
    return out;
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
    return SymplecticMatrix(gamma_ * rhs.gamma_);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    const int g = genus();
    const IntMatrix at = a().transpose(), bt = b().transpose(), ct = c().transpose(), dt = d().transpose();
    IntMatrix m(2 * g);
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) {
            m(r, c) = dt(r, c);
            m(r, g + c) = -bt(r, c);
            m(g + r, c) = -ct(r, c);
            m(g + r, g + c) = at(r, c);
        }
    return SymplecticMatrix(m);
}

bool is_in_gamma_48(const SymplecticMatrix& gamma) {
    const int n = gamma.matrix().size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (mod(gamma.matrix()(r, c) - (r == c ? 1 : 0), 4) != 0) return false;
    const IntMatrix abt = gamma.a() * gamma.b().transpose();
    const IntMatrix cdt = gamma.c() * gamma.d().transpose();
    for (int i = 0; i < gamma.genus(); ++i)
        if (mod(abt(i, i), 8) != 0 || mod(cdt(i, i), 8) != 0) return false;
    return true;
}

CMatrix cocycle_factor(const SymplecticMatrix& gamma, const SiegelPoint& tau) {
    if (gamma.genus() != tau.genus()) throw std::invalid_argument("genus mismatch between gamma and tau");
    return to_complex(gamma.c()) * tau.tau() + to_complex(gamma.d());
}

SiegelPoint act(const SymplecticMatrix& gamma, const SiegelPoint& tau) {
    const CMatrix denom = cocycle_factor(gamma, tau);
    const CMatrix numer = to_complex(gamma.a()) * tau.tau() + to_complex(gamma.b());
    Eigen::PartialPivLU<CMatrix> lu(denom.transpose());
    if (!(lu.rcond() > 1e-12)) throw std::domain_error("c*tau + d is numerically singular");
    // X = N D^{-1}  <=>  D^T X^T = N^T
    const CMatrix x = lu.solve(numer.transpose()).transpose();
    return SiegelPoint((x + x.transpose()) / 2.0);
}

SymplecticMatrix random_gamma_48(int genus, std::uint64_t seed, int word_length) {
    if (word_length < 1) throw std::invalid_argument("word_length must be at least 1");
    if (genus < 1) throw std::invalid_argument("genus must be positive");
    Rng rng(mix_seed(seed, 0x4a8));
    SymplecticMatrix word = SymplecticMatrix::identity(genus);
    for (int letter = 0; letter < word_length; ++letter) {
        IntMatrix s(genus);
        bool nonzero = false;
        while (!nonzero) {
            for (int j = 0; j < genus; ++j) {
                s(j, j) = 8 * rng.integer(-1, 1);
                for (int l = j + 1; l < genus; ++l) s(j, l) = s(l, j) = 4 * rng.integer(-1, 1);
            }
            for (int j = 0; j < genus && !nonzero; ++j)
                for (int l = 0; l < genus; ++l) nonzero = nonzero || s(j, l) != 0;
        }
        const bool upper = rng.integer(0, 1) == 0;
        word = word * (upper ? SymplecticMatrix::upper_unipotent(s) : SymplecticMatrix::lower_unipotent(s));
    }
    return word;
}

}  // namespace thetakit
