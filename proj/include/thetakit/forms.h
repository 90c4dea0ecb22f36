#pragma once

// Quadratic and quartic forms in u = (u_1, ..., u_g).
//
// A quadratic form phi(u) = sum_{j,l} phi_jl u_j u_l is kept as its symmetric
// matrix. A quartic form is kept as a fully symmetric 4-tensor, one
// coefficient per sorted index tuple, so that
//     F(u) = sum over all (j,l,m,p) of F_{jlmp} u_j u_l u_m u_p.
// Two quartic forms are equal as polynomials iff their tensors agree.

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "thetakit/siegel.h"

namespace thetakit {

using QuarticKey = std::array<int, 4>;

/// All sorted index tuples j <= l <= m <= p < genus, in lexicographic order.
std::vector<QuarticKey> quartic_keys(int genus);

/// Number of distinct orderings of the tuple (4! / prod multiplicities!).
int quartic_multiplicity(const QuarticKey& key);

class QuarticForm;

class SymmetricForm {
public:
    explicit SymmetricForm(int genus = 1) : m_(CMatrix::Zero(genus, genus)) {}
    /// Takes the upper triangle of `m` and mirrors it.
    explicit SymmetricForm(const CMatrix& m);

    int genus() const { return static_cast<int>(m_.rows()); }
    cplx operator()(int j, int l) const { return m_(j, l); }
    void set(int j, int l, cplx v);
    const CMatrix& matrix() const { return m_; }

    cplx evaluate(const CVector& u) const;
    double max_abs() const;

    SymmetricForm operator+(const SymmetricForm& o) const;
    SymmetricForm operator-(const SymmetricForm& o) const;
    SymmetricForm operator*(cplx s) const;
    SymmetricForm& operator+=(const SymmetricForm& o);

    /// Symmetrized tensor of the product polynomial phi(u) * eta(u).
    QuarticForm product(const SymmetricForm& o) const;
    QuarticForm square() const;

private:
    CMatrix m_;
};

class QuarticForm {
public:
    explicit QuarticForm(int genus = 1);

    int genus() const { return genus_; }
    /// Coefficient for any ordering of the indices.
    cplx operator()(int j, int l, int m, int p) const;
    cplx at(const QuarticKey& sorted) const;
    void set(int j, int l, int m, int p, cplx v);
    const std::map<QuarticKey, cplx>& coefficients() const { return c_; }

    cplx evaluate(const CVector& u) const;
    double max_abs() const;

    QuarticForm operator+(const QuarticForm& o) const;
    QuarticForm operator-(const QuarticForm& o) const;
    QuarticForm operator*(cplx s) const;
    QuarticForm& operator+=(const QuarticForm& o);

    /// Symmetrizes an arbitrary 4-index array given as a callback
    /// f(j,l,m,p), averaging over the 24 index permutations.
    template <class F>
    static QuarticForm symmetrize(int genus, F&& f);

private:
    int genus_;
    std::map<QuarticKey, cplx> c_;
};

template <class F>
QuarticForm QuarticForm::symmetrize(int genus, F&& f) {
    QuarticForm out(genus);
    for (const auto& key : quartic_keys(genus)) {
        std::array<int, 4> idx = key;
        cplx acc = 0.0;
        int count = 0;
        // sorted start; next_permutation walks the distinct orderings
        do {
            acc += f(idx[0], idx[1], idx[2], idx[3]);
            ++count;
        } while (std::next_permutation(idx.begin(), idx.end()));
        out.c_[key] = acc / static_cast<double>(count);
    }
    return out;
}

}  // namespace thetakit
