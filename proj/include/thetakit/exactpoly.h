#pragma once

// Sparse multivariate polynomials with exact rational coefficients, and the
// formal identities checked with them.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace thetakit {

/// Largest total degree any operation may produce.
inline constexpr long kMaxPolyDegree = 1000000;

class RationalPoly {
public:
    using Exponents = std::vector<std::uint32_t>;

    struct ExponentsHash {
        std::size_t operator()(const Exponents& e) const;
    };
    using TermMap = std::unordered_map<Exponents, mpq_class, ExponentsHash>;

    /// The zero polynomial over no variables.
    RationalPoly() = default;

    static RationalPoly constant(const mpq_class& c);
    static RationalPoly variable(const std::string& name);

    /// Variables in the order they were first introduced.
    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    long total_degree() const;

    /// Coefficient of the monomial given as {name: exponent}; names absent
    /// from the polynomial contribute exponent 0.
    mpq_class coefficient(const std::map<std::string, std::uint32_t>& monomial) const;

    /// Terms sorted in graded lexicographic order, largest first.
    std::vector<std::pair<Exponents, mpq_class>> sorted_terms() const;

    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator-() const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const mpq_class& c) const;
    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);

    RationalPoly pow(unsigned exponent) const;

    /// Replaces every occurrence of `name` by `value`. A name that does not
    /// occur leaves the polynomial unchanged.
    RationalPoly substitute(const std::string& name, const RationalPoly& value) const;

    /// Exact value at a full assignment; throws std::invalid_argument when a
    /// variable with a nonzero exponent is unassigned.
    mpq_class evaluate(const std::map<std::string, mpq_class>& values) const;

    /// "3/2*x^2*y - z + 1" in graded lexicographic order; "0" for zero.
    std::string to_string() const;

    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return (a - b).is_zero(); }

private:
    /// Copy over `names` (a superset of this polynomial's variables).
    RationalPoly widened(const std::vector<std::string>& names) const;
    static std::vector<std::string> merged_names(const RationalPoly& a, const RationalPoly& b);
    void add_term(const Exponents& e, const mpq_class& c);

    std::vector<std::string> vars_;
    TermMap terms_;
};

RationalPoly operator*(const mpq_class& c, const RationalPoly& p);

/// Outcome of one formal identity.
struct FormalCheck {
    std::string name;
    bool holds = false;
    /// Terms left in (left side - right side); 0 iff the identity holds.
    std::size_t residual_terms = 0;
    /// Sizes of the main intermediate expressions, in construction order.
    std::vector<std::pair<std::string, std::size_t>> term_counts;
    /// Largest term count of any intermediate.
    std::size_t high_water = 0;
    std::vector<std::string> notes;
};

/// chi_1^2 + chi_2^2 + chi_3^2 - c (chi_1 chi_2 + chi_2 chi_3 + chi_3 chi_1)
/// with chi_1 = (p-q)^2, chi_2 = (p-r)^2, chi_3 = (r-q)^2; zero iff c = 2.
FormalCheck verify_chi_identity(const mpq_class& cross_factor = 2);

/// ((phi_0+...+phi_3)^2 - 2 sum phi_k^2)^2 - c phi_0 phi_1 phi_2 phi_3 over
/// the twelve symbols psi_{a,j}, a in {00,01,02,03}, with every eta_{a,b}
/// developed as a 2x2 determinant. Checked for the j=1 family and for its
/// j=2 mirror; zero iff c = 64.
FormalCheck verify_phi_identity(const mpq_class& constant = 64);

/// Over the thirty symbols psi_{a,j}, a even, and the form variables u_1, u_2:
/// each explicit delta psi_a equals
///     1/4 (sum over systems G containing a of R_G - 1/3 sum over all G of R_G),
/// R_G = (sum_{b in G} psi_b)^2 - 2 sum_{b in G} psi_b^2. `quarter` replaces
/// the coefficient 1/4 of the Goepel sum in the explicit formula. The summed
/// direction (four explicit formulas against R_G) is also evaluated and its
/// residual size reported in the notes.
FormalCheck verify_gopel_sum_lemma(const mpq_class& quarter = mpq_class(1, 4));

}  // namespace thetakit
