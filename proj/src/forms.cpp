#include "thetakit/forms.h"

#include <stdexcept>

namespace thetakit {

std::vector<QuarticKey> quartic_keys(int genus) {
    std::vector<QuarticKey> keys;
    for (int j = 0; j < genus; ++j)
        for (int l = j; l < genus; ++l)
            for (int m = l; m < genus; ++m)
                for (int p = m; p < genus; ++p) keys.push_back({j, l, m, p});
    return keys;
}

int quartic_multiplicity(const QuarticKey& key) {
    static constexpr int factorial[] = {1, 1, 2, 6, 24};
    int denom = 1;
    for (std::size_t i = 0; i < 4;) {
        std::size_t run = 1;
        while (i + run < 4 && key[i + run] == key[i]) ++run;
        denom *= factorial[run];
        i += run;
    }
    return 24 / denom;
}

namespace {

void require_same_genus(int a, int b) {
    if (a != b) throw std::invalid_argument("form genus mismatch");
}

QuarticKey sorted_key(int j, int l, int m, int p) {
    QuarticKey k{j, l, m, p};
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

// --- SymmetricForm -------------------------------------------------------

SymmetricForm::SymmetricForm(const CMatrix& m) : m_(m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("symmetric form needs a square matrix");
    for (Eigen::Index j = 0; j < m_.rows(); ++j)
        for (Eigen::Index l = 0; l < j; ++l) m_(j, l) = m_(l, j);
}

void SymmetricForm::set(int j, int l, cplx v) {
    m_(j, l) = v;
    m_(l, j) = v;
}

cplx SymmetricForm::evaluate(const CVector& u) const { return (u.transpose() * m_ * u)(0, 0); }

double SymmetricForm::max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

SymmetricForm SymmetricForm::operator+(const SymmetricForm& o) const {
    require_same_genus(genus(), o.genus());
    return SymmetricForm(CMatrix(m_ + o.m_));
}

SymmetricForm SymmetricForm::operator-(const SymmetricForm& o) const {
    require_same_genus(genus(), o.genus());
    return SymmetricForm(CMatrix(m_ - o.m_));
}

SymmetricForm SymmetricForm::operator*(cplx s) const { return SymmetricForm(CMatrix(m_ * s)); }

SymmetricForm& SymmetricForm::operator+=(const SymmetricForm& o) {
    require_same_genus(genus(), o.genus());
    m_ += o.m_;
    return *this;
}

QuarticForm SymmetricForm::product(const SymmetricForm& o) const {
    require_same_genus(genus(), o.genus());
    return QuarticForm::symmetrize(genus(), [&](int j, int l, int m, int p) { return m_(j, l) * o.m_(m, p); });
}

QuarticForm SymmetricForm::square() const { return product(*this); }

// --- QuarticForm ---------------------------------------------------------

QuarticForm::QuarticForm(int genus) : genus_(genus) {
    if (genus < 1) throw std::invalid_argument("form genus must be positive");
    for (const auto& key : quartic_keys(genus)) c_[key] = 0.0;
}

cplx QuarticForm::operator()(int j, int l, int m, int p) const { return at(sorted_key(j, l, m, p)); }

cplx QuarticForm::at(const QuarticKey& sorted) const {
    const auto it = c_.find(sorted);
    if (it == c_.end()) throw std::out_of_range("quartic index out of range");
    return it->second;
}

void QuarticForm::set(int j, int l, int m, int p, cplx v) {
    const auto key = sorted_key(j, l, m, p);
    if (key[0] < 0 || key[3] >= genus_) throw std::out_of_range("quartic index out of range");
    c_[key] = v;
}

cplx QuarticForm::evaluate(const CVector& u) const {
    if (u.size() != genus_) throw std::invalid_argument("vector length differs from form genus");
    cplx acc = 0.0;
    for (const auto& [k, v] : c_)
        acc += v * static_cast<double>(quartic_multiplicity(k)) * u(k[0]) * u(k[1]) * u(k[2]) * u(k[3]);
    return acc;
}

double QuarticForm::max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : c_) m = std::max(m, std::abs(v));
    return m;
}

QuarticForm QuarticForm::operator+(const QuarticForm& o) const {
    QuarticForm out = *this;
    out += o;
    return out;
}

QuarticForm QuarticForm::operator-(const QuarticForm& o) const {
    QuarticForm out = *this;
    out += o * -1.0;
    return out;
}

QuarticForm QuarticForm::operator*(cplx s) const {
    QuarticForm out = *this;
    for (auto& [k, v] : out.c_) v *= s;
    return out;
}

QuarticForm& QuarticForm::operator+=(const QuarticForm& o) {
    require_same_genus(genus_, o.genus_);
    for (const auto& [k, v] : o.c_) c_[k] += v;
    return *this;
}

}  // namespace thetakit
