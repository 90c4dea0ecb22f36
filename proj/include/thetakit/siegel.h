#pragma once

// Points of the Siegel upper half-space, the normalized derivations
// delta_jl, and integer symplectic matrices with the Gamma(4,8) congruences.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

namespace thetakit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline const cplx kI{0.0, 1.0};

/// Smallest admissible eigenvalue of Im(tau).
inline constexpr double kPositivityMargin = 1e-8;

/// A symmetric complex g x g matrix with positive-definite imaginary part.
class SiegelPoint {
public:
    /// Builds tau from its upper triangle (the lower triangle of `tau` is
    /// ignored and mirrored). Throws std::domain_error if the smallest
    /// eigenvalue of Im(tau) does not exceed kPositivityMargin.
    explicit SiegelPoint(const CMatrix& tau);

    /// tau = scalar * identity
    static SiegelPoint scalar(int genus, cplx tau);

    int genus() const { return static_cast<int>(tau_.rows()); }
    const CMatrix& tau() const { return tau_; }
    cplx operator()(int j, int l) const { return tau_(j, l); }

    /// Smallest eigenvalue of Im(tau).
    double lambda_min() const { return lambda_min_; }

    /// Copy with tau_jl (and tau_lj) shifted by h.
    SiegelPoint shifted(int j, int l, cplx h) const;

private:
    CMatrix tau_;
    double lambda_min_;
};

/// JSON {"genus": g, "tau": [[re,im], ...]} with g*g row-major entries.
/// Loading rejects asymmetric input (beyond 1e-12 relative) and non-positive Im.
nlohmann::json to_json(const SiegelPoint& tau);
SiegelPoint siegel_point_from_json(const nlohmann::json& j);

/// Index pair (j,l), 0 <= j <= l < g, of delta_jl = (1/pi i) d/dtau_jj for
/// j == l and (1/2 pi i) d/dtau_jl for j < l.
struct DerivationIndex {
    int j;
    int l;

    DerivationIndex(int j_, int l_);
    bool diagonal() const { return j == l; }
    /// Factor c such that delta_jl = c * d/dtau_jl.
    cplx normalization() const;
    /// Flat position: diagonal entries first, then j<l lexicographically
    /// (genus 2: tau_11, tau_22, tau_12).
    int flat(int genus) const;
    static DerivationIndex from_flat(int genus, int k);
};

/// n = g(g+1)/2
inline int derivation_count(int genus) { return genus * (genus + 1) / 2; }

/// Square integer matrix with overflow-checked arithmetic.
class IntMatrix {
public:
    explicit IntMatrix(int n = 0) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}
    static IntMatrix identity(int n);

    int size() const { return n_; }
    std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
    std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

    IntMatrix operator*(const IntMatrix& rhs) const;  ///< throws std::overflow_error
    IntMatrix transpose() const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int n_;
    std::vector<std::int64_t> data_;
};

/// gamma = [[a, b], [c, d]] in Sp_2g(Z).
class SymplecticMatrix {
public:
    /// Throws std::invalid_argument unless gamma^T J gamma = J exactly.
    explicit SymplecticMatrix(IntMatrix gamma);

    static SymplecticMatrix identity(int genus);
    /// [[1, b], [0, 1]] with b symmetric.
    static SymplecticMatrix upper_unipotent(const IntMatrix& b);
    /// [[1, 0], [c, 1]] with c symmetric.
    static SymplecticMatrix lower_unipotent(const IntMatrix& c);

    int genus() const { return gamma_.size() / 2; }
    const IntMatrix& matrix() const { return gamma_; }
    IntMatrix a() const { return block(0, 0); }
    IntMatrix b() const { return block(0, 1); }
    IntMatrix c() const { return block(1, 0); }
    IntMatrix d() const { return block(1, 1); }

    SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;
    /// [[d^T, -b^T], [-c^T, a^T]]
    SymplecticMatrix inverse() const;

private:
    IntMatrix block(int row, int col) const;
    IntMatrix gamma_;
};

bool is_symplectic(const IntMatrix& gamma);

/// gamma == 1 (mod 4), diag(a b^T) == diag(c d^T) == 0 (mod 8).
bool is_in_gamma_48(const SymplecticMatrix& gamma);

/// c tau + d
CMatrix cocycle_factor(const SymplecticMatrix& gamma, const SiegelPoint& tau);

/// (a tau + b)(c tau + d)^{-1}, symmetrized. Throws std::domain_error when
/// c tau + d has condition number above 1e12.
SiegelPoint act(const SymplecticMatrix& gamma, const SiegelPoint& tau);

/// Product of `word_length` unipotent generators, each in Gamma(4,8): upper
/// or lower, with a symmetric block whose off-diagonal entries lie in
/// {-4,0,4} and diagonal entries in {-8,0,8} (never all zero).
/// Throws std::invalid_argument for word_length < 1.
SymplecticMatrix random_gamma_48(int genus, std::uint64_t seed, int word_length);

}  // namespace thetakit
