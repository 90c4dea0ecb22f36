#include "thetakit/exactpoly.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "thetakit/characteristics.h"

namespace thetakit {

std::size_t RationalPoly::ExponentsHash::operator()(const Exponents& e) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto v : e) h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

RationalPoly RationalPoly::constant(const mpq_class& c) {
    // GMP arithmetic assumes lowest terms; mpq_class(num, den) does not reduce
    mpq_class reduced = c;
    reduced.canonicalize();
    RationalPoly p;
    p.add_term({}, reduced);
    return p;
}

RationalPoly RationalPoly::variable(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
    RationalPoly p;
    p.vars_ = {name};
    p.add_term({1}, 1);
    return p;
}

void RationalPoly::add_term(const Exponents& e, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

long RationalPoly::total_degree() const {
    long best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0L));
    return best;
}

mpq_class RationalPoly::coefficient(const std::map<std::string, std::uint32_t>& monomial) const {
    Exponents e(vars_.size(), 0);
    for (const auto& [name, power] : monomial) {
        const auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) {
            if (power != 0) return 0;
            continue;
        }
        e[static_cast<std::size_t>(it - vars_.begin())] = power;
    }
    const auto found = terms_.find(e);
    return found == terms_.end() ? mpq_class(0) : found->second;
}

std::vector<std::pair<RationalPoly::Exponents, mpq_class>> RationalPoly::sorted_terms() const {
    std::vector<std::pair<Exponents, mpq_class>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        const long dx = std::accumulate(x.first.begin(), x.first.end(), 0L);
        const long dy = std::accumulate(y.first.begin(), y.first.end(), 0L);
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    return out;
}

std::vector<std::string> RationalPoly::merged_names(const RationalPoly& a, const RationalPoly& b) {
    auto names = a.vars_;
    for (const auto& n : b.vars_)
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    return names;
}

RationalPoly RationalPoly::widened(const std::vector<std::string>& names) const {
    if (names == vars_) return *this;
    std::vector<std::size_t> slot(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k)
        slot[k] = static_cast<std::size_t>(std::find(names.begin(), names.end(), vars_[k]) - names.begin());
    RationalPoly out;
    out.vars_ = names;
    out.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
        Exponents w(names.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) w[slot[k]] = e[k];
        out.terms_.emplace(std::move(w), c);
    }
    return out;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    RationalPoly out = *this;
    out += o;
    return out;
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
    RationalPoly out = *this;
    out -= o;
    return out;
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    const auto names = merged_names(*this, o);
    if (names != vars_) *this = widened(names);
    const RationalPoly rhs = o.widened(names);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) { return *this += -o; }

RationalPoly RationalPoly::operator*(const mpq_class& factor) const {
    mpq_class c = factor;
    c.canonicalize();
    if (c == 0) {
        RationalPoly zero;
        zero.vars_ = vars_;
        return zero;
    }
    RationalPoly out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
}

RationalPoly operator*(const mpq_class& c, const RationalPoly& p) { return p * c; }

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (total_degree() + o.total_degree() > kMaxPolyDegree)
        throw std::domain_error("polynomial degree exceeds the supported range");
    const auto names = merged_names(*this, o);
    const RationalPoly x = widened(names), y = o.widened(names);
    RationalPoly out;
    out.vars_ = names;
    out.terms_.reserve(x.terms_.size() * y.terms_.size() / 4 + 1);
    Exponents e(names.size());
    mpq_class prod;
    for (const auto& [ex, cx] : x.terms_)
        for (const auto& [ey, cy] : y.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ex[k] + ey[k];
            prod = cx * cy;
            auto [it, inserted] = out.terms_.try_emplace(e, prod);
            if (!inserted) it->second += prod;
        }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

RationalPoly RationalPoly::pow(unsigned exponent) const {
    if (static_cast<double>(total_degree()) * exponent > static_cast<double>(kMaxPolyDegree))
        throw std::domain_error("polynomial degree exceeds the supported range");
    RationalPoly result = constant(1);
    RationalPoly base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

RationalPoly RationalPoly::substitute(const std::string& name, const RationalPoly& value) const {
    const auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return *this;
    const auto slot = static_cast<std::size_t>(it - vars_.begin());

    // Group terms by the power of `name`, then expand each group once.
    std::map<std::uint32_t, RationalPoly> by_power;
    for (const auto& [e, c] : terms_) {
        auto& group = by_power[e[slot]];
        group.vars_ = vars_;
        Exponents rest = e;
        rest[slot] = 0;
        group.add_term(rest, c);
    }
    RationalPoly out;
    out.vars_ = vars_;
    RationalPoly power = constant(1);
    std::uint32_t reached = 0;
    for (const auto& [k, group] : by_power) {
        power = power * value.pow(k - reached);
        reached = k;
        out += group * power;
    }
    return out;
}

mpq_class RationalPoly::evaluate(const std::map<std::string, mpq_class>& values) const {
    std::vector<std::optional<mpq_class>> v(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        const auto it = values.find(vars_[k]);
        if (it != values.end()) {
            v[k] = it->second;
            v[k]->canonicalize();
        }
    }
    mpq_class sum = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class term = c;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!v[k]) throw std::invalid_argument("no value for variable " + vars_[k]);
            mpq_class p;
            mpz_pow_ui(p.get_num_mpz_t(), v[k]->get_num_mpz_t(), e[k]);
            mpz_pow_ui(p.get_den_mpz_t(), v[k]->get_den_mpz_t(), e[k]);
            term *= p;
        }
        sum += term;
    }
    return sum;
}

std::string RationalPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted_terms()) {
        const bool negative = c < 0;
        const mpq_class mag = abs(c);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        if (mono.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << mono;
        else
            os << mag.get_str() << "*" << mono;
    }
    return os.str();
}

// --- formal identities ---------------------------------------------------

namespace {

RationalPoly var(const std::string& name) { return RationalPoly::variable(name); }

void count(FormalCheck& out, const std::string& label, const RationalPoly& p) {
    out.term_counts.emplace_back(label, p.term_count());
    out.high_water = std::max(out.high_water, p.term_count());
}

std::string psi_name(const std::string& a, int j) { return "psi_" + a + "_" + std::to_string(j); }

}  // namespace

FormalCheck verify_chi_identity(const mpq_class& cross_factor) {
    FormalCheck out;
    out.name = "chi";
    const auto p = var("p"), q = var("q"), r = var("r");
    const auto chi1 = (p - q).pow(2), chi2 = (p - r).pow(2), chi3 = (r - q).pow(2);
    const auto relation =
        chi1.pow(2) + chi2.pow(2) + chi3.pow(2) - (chi1 * chi2 + chi2 * chi3 + chi3 * chi1) * cross_factor;
    count(out, "chi_1", chi1);
    count(out, "relation", relation);
    out.residual_terms = relation.term_count();
    out.holds = relation.is_zero();
    return out;
}

FormalCheck verify_phi_identity(const mpq_class& constant) {
    FormalCheck out;
    out.name = "phi";
    const std::array<std::string, 4> labels = {"00", "01", "02", "03"};
    auto eta = [&](int x, int y) {
        auto d = [&](int j) { return var(psi_name(labels[x], j)) - var(psi_name(labels[y], j)); };
        return d(1) * d(2) - d(3).pow(2);
    };
    bool holds = true;
    std::size_t residual = 0;
    for (int j = 1; j <= 2; ++j) {
        auto p = [&](int x) { return var(psi_name(labels[x], j)); };
        auto phi = [&](int x, int y, int z) {
            return (p(z) - p(x)) * (p(x) - p(y)) * eta(y, z) + (p(y) - p(z)) * (p(x) - p(y)) * eta(z, x) +
                   (p(y) - p(z)) * (p(z) - p(x)) * eta(x, y);
        };
        // phi_k omits index k
        const std::array<RationalPoly, 4> f = {phi(1, 2, 3), phi(0, 2, 3), phi(0, 1, 3), phi(0, 1, 2)};
        const auto sum = f[0] + f[1] + f[2] + f[3];
        const auto inner = sum * sum - (f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3]) * 2;
        const auto inner_sq = inner * inner;
        const auto product = f[0] * f[1] * f[2] * f[3] * constant;
        const auto relation = inner_sq - product;
        const std::string tag = " (j=" + std::to_string(j) + ")";
        count(out, "phi_0" + tag, f[0]);
        count(out, "inner" + tag, inner);
        count(out, "inner^2" + tag, inner_sq);
        count(out, "product" + tag, product);
        count(out, "relation" + tag, relation);
        holds = holds && relation.is_zero();
        residual += relation.term_count();
    }
    out.holds = holds;
    out.residual_terms = residual;
    return out;
}

FormalCheck verify_gopel_sum_lemma(const mpq_class& quarter) {
    FormalCheck out;
    out.name = "gopel-sum";
    const auto evens = enumerate(2, ParityFilter::even);
    const auto systems = gopel_systems(2);
    const auto u1 = var("u_1"), u2 = var("u_2");
    const auto uu = u1 * u1, vv = u2 * u2, uv = u1 * u2 * 2;

    std::vector<RationalPoly> psi, squares;
    RationalPoly all_sum, all_squares;
    for (const auto& a : evens) {
        const auto l = digit_encode(a);
        psi.push_back(var(psi_name(l, 1)) * uu + var(psi_name(l, 2)) * vv + var(psi_name(l, 3)) * uv);
        squares.push_back(psi.back() * psi.back());
        all_sum += psi.back();
        all_squares += squares.back();
    }
    auto slot = [&](const Characteristic& a) {
        return static_cast<std::size_t>(std::find(evens.begin(), evens.end(), a) - evens.begin());
    };
    std::vector<RationalPoly> system_sq, r;
    RationalPoly r_total;
    for (const auto& g : systems) {
        RationalPoly s, sq;
        for (const auto& a : g.members()) {
            s += psi[slot(a)];
            sq += squares[slot(a)];
        }
        system_sq.push_back(s * s);
        r.push_back(system_sq.back() - sq * 2);
        r_total += r.back();
    }
    count(out, "psi", psi.front());
    count(out, "R_G", r.front());
    const auto all_sum_sq = all_sum * all_sum;

    std::vector<RationalPoly> explicit_form;
    std::size_t residual = 0;
    for (std::size_t k = 0; k < evens.size(); ++k) {
        RationalPoly e = squares[k] * -2 - all_squares * mpq_class(1, 3) - all_sum_sq * mpq_class(1, 6);
        RationalPoly incident;
        for (std::size_t s = 0; s < systems.size(); ++s)
            if (systems[s].contains(evens[k])) {
                e += system_sq[s] * quarter;
                incident += r[s];
            }
        explicit_form.push_back(e);
        const auto diff = e - (incident - r_total * mpq_class(1, 3)) * mpq_class(1, 4);
        residual += diff.term_count();
    }
    count(out, "explicit delta psi", explicit_form.front());
    out.residual_terms = residual;
    out.holds = residual == 0;

    std::size_t summed_max = 0;
    for (std::size_t s = 0; s < systems.size(); ++s) {
        RationalPoly total;
        for (const auto& a : systems[s].members()) total += explicit_form[slot(a)];
        summed_max = std::max(summed_max, (total - r[s]).term_count());
    }
    out.notes.push_back("summing the four explicit formulas of a system against R_G leaves up to " +
                        std::to_string(summed_max) +
                        " terms: that direction holds on theta values, not formally");
    return out;
}

}  // namespace thetakit
