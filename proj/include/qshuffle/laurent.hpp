#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qshuffle/errors.hpp"
#include "qshuffle/rational.hpp"

namespace qshuffle {

// Identifies a deformation parameter. Off-diagonal VarId{i,j} (i != j) is the
// pair parameter q_ij; diagonal VarId{i,i} is q_ii (Serre extension only).
// VarId{0,0} is reserved for the scalar variable u = q^(1/2) used when
// parameters are realized from Cartan data. In the sigma-ring used by the
// determinant engine, VarId{i,j} with i < j stands for sigma_ij instead.
struct VarId {
    int i = 0;
    int j = 0;
    friend auto operator<=>(const VarId&, const VarId&) = default;
};

inline constexpr VarId kScalarVar{0, 0};

using VarNamer = std::function<std::string(VarId)>;

inline std::string q_var_name(VarId v) {
    if (v == kScalarVar) return "u";
    return "q" + std::to_string(v.i) + "_" + std::to_string(v.j);
}

inline std::string sigma_var_name(VarId v) {
    if (v == kScalarVar) return "u";
    return "s" + std::to_string(v.i) + "_" + std::to_string(v.j);
}

// A Laurent monomial: sorted (VarId, exponent) pairs, no zero exponents.
class Monomial {
public:
    using Term = std::pair<VarId, int>;

    Monomial() = default;
    explicit Monomial(VarId v, int exp = 1) {
        if (exp != 0) factors_.emplace_back(v, exp);
    }
    static Monomial from_sorted(std::vector<Term> t) {
        Monomial m;
        m.factors_ = std::move(t);
        return m;
    }

    bool trivial() const { return factors_.empty(); }
    const std::vector<Term>& factors() const { return factors_; }

    int exponent_of(VarId v) const {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                                   [](const Term& t, VarId w) { return t.first < w; });
        return (it != factors_.end() && it->first == v) ? it->second : 0;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : factors_) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.factors_.reserve(factors_.size() + o.factors_.size());
        auto a = factors_.begin(), b = o.factors_.begin();
        while (a != factors_.end() || b != o.factors_.end()) {
            if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
                r.factors_.push_back(*a++);
            } else if (a == factors_.end() || b->first < a->first) {
                r.factors_.push_back(*b++);
            } else {
                int e = a->second + b->second;
                if (e != 0) r.factors_.emplace_back(a->first, e);
                ++a;
                ++b;
            }
        }
        return r;
    }

    Monomial inverse() const {
        Monomial r;
        r.factors_.reserve(factors_.size());
        for (const auto& [v, e] : factors_) r.factors_.emplace_back(v, -e);
        return r;
    }

    Monomial pow(int k) const {
        Monomial r;
        if (k == 0) return r;
        r.factors_.reserve(factors_.size());
        for (const auto& [v, e] : factors_) r.factors_.emplace_back(v, e * k);
        return r;
    }

    // Divisibility in the polynomial sense (all exponents of *this >= o's).
    bool divisible_by(const Monomial& o) const {
        for (const auto& [v, e] : o.factors_)
            if (exponent_of(v) < e) return false;
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    // Storage/rendering order: lexicographic on the (VarId, exponent) lists.
    // The empty monomial (the constant term) sorts first.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(),
                                            b.factors_.begin(), b.factors_.end());
    }

    std::string str(const VarNamer& namer = q_var_name) const {
        if (factors_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& [v, e] : factors_) {
            if (!first) os << "*";
            first = false;
            os << namer(v);
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::vector<Term> factors_;
};

// Exact sparse multivariate Laurent polynomial with rational coefficients.
// Terms are kept in a std::map for a canonical iteration order; no stored
// coefficient is zero.
class LaurentPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    LaurentPoly() = default;
    explicit LaurentPoly(Rational c) {
        if (!qshuffle::is_zero(c)) terms_[Monomial{}] = std::move(c);
    }
    explicit LaurentPoly(long c) : LaurentPoly(Rational(c)) {}
    explicit LaurentPoly(Monomial m, Rational c = Rational(1)) {
        if (!qshuffle::is_zero(c)) terms_[std::move(m)] = std::move(c);
    }

    static LaurentPoly variable(VarId v, int exp = 1) {
        return LaurentPoly(Monomial(v, exp));
    }
    static LaurentPoly one() { return LaurentPoly(Rational(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.trivial());
    }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.trivial() &&
               terms_.begin()->second == 1;
    }
    bool is_monomial() const { return terms_.size() == 1; }

    // The single term of a monomial polynomial.
    std::pair<Monomial, Rational> monomial_term() const {
        if (terms_.size() != 1)
            throw MathError("monomial_term: polynomial has " +
                            std::to_string(terms_.size()) + " terms");
        return *terms_.begin();
    }

    Rational constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (qshuffle::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (qshuffle::is_zero(it->second)) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly& scale(const Rational& c) {
        if (qshuffle::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coeff] : terms_) coeff *= c;
        return *this;
    }

    LaurentPoly pow(int k) const {
        if (k < 0) {
            if (terms_.size() != 1)
                throw MathError("pow: negative power of a non-monomial");
            auto [m, c] = monomial_term();
            if (c != 1 && c != -1)
                throw MathError("pow: negative power needs unit coefficient");
            LaurentPoly r(m.pow(k), (k % 2 == 0) ? Rational(1) : c);
            return r;
        }
        LaurentPoly r = one();
        LaurentPoly base = *this;
        while (k > 0) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    std::set<VarId> variables() const {
        std::set<VarId> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.factors()) vs.insert(v);
        return vs;
    }

    // Max/min exponent of v over all terms (0 for the zero polynomial).
    int max_degree_in(VarId v) const {
        int d = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent_of(v);
            d = first ? e : std::max(d, e);
            first = false;
        }
        return d;
    }
    int min_degree_in(VarId v) const {
        int d = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent_of(v);
            d = first ? e : std::min(d, e);
            first = false;
        }
        return d;
    }

    int total_degree() const {
        int d = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            d = first ? m.total_degree() : std::max(d, m.total_degree());
            first = false;
        }
        return d;
    }

    std::string str(const VarNamer& namer = q_var_name) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (m.trivial()) {
                os << to_string(a);
            } else {
                if (a != 1) os << to_string(a) << "*";
                os << m.str(namer);
            }
        }
        return os.str();
    }

private:
    TermMap terms_;
};

inline bool is_zero(const LaurentPoly& p) { return p.is_zero(); }

inline LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }
inline LaurentPoly poly_neg(const LaurentPoly& a) { return -a; }

namespace detail {

// Graded-lex order used internally for division; admissible (multiplicative,
// with 1 minimal) on the ordinary exponents that the content shift guarantees.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    auto ia = a.factors().begin(), ib = b.factors().begin();
    while (ia != a.factors().end() || ib != b.factors().end()) {
        bool ha = ia != a.factors().end(), hb = ib != b.factors().end();
        VarId v = (ha && hb) ? std::min(ia->first, ib->first)
                             : (ha ? ia->first : ib->first);
        int ea = 0, eb = 0;
        if (ha && ia->first == v) ea = (ia++)->second;
        if (hb && ib->first == v) eb = (ib++)->second;
        if (ea != eb) return ea < eb;
    }
    return false;
}

inline Monomial leading_monomial(const LaurentPoly& p) {
    auto it = p.terms().begin();
    Monomial best = it->first;
    for (++it; it != p.terms().end(); ++it)
        if (grlex_less(best, it->first)) best = it->first;
    return best;
}

// Componentwise-minimum monomial; factoring it out shifts a Laurent
// polynomial into the ordinary polynomial ring.
inline Monomial content_shift(const LaurentPoly& p) {
    std::map<VarId, int> mins;
    for (const auto& [m, c] : p.terms())
        for (const auto& [v, e] : m.factors()) mins[v] = 0;
    for (auto& [v, lo] : mins) lo = p.min_degree_in(v);
    std::vector<Monomial::Term> t;
    for (const auto& [v, lo] : mins)
        if (lo != 0) t.emplace_back(v, lo);
    return Monomial::from_sorted(std::move(t));
}

} // namespace detail

// Exact division: returns r with r*div == num, or nullopt when div does not
// divide num. Both Laurent; the quotient is reconstructed through a content
// shift followed by ordinary sparse polynomial division.
inline std::optional<LaurentPoly> poly_divide_exact(const LaurentPoly& num,
                                                    const LaurentPoly& div) {
    if (div.is_zero()) throw MathError("poly_divide_exact: division by zero");
    if (num.is_zero()) return LaurentPoly{};

    Monomial sn = detail::content_shift(num);
    Monomial sd = detail::content_shift(div);
    LaurentPoly n, d;
    {
        Monomial sni = sn.inverse(), sdi = sd.inverse();
        for (const auto& [m, c] : num.terms()) n.add_term(m * sni, c);
        for (const auto& [m, c] : div.terms()) d.add_term(m * sdi, c);
    }

    Monomial ld = detail::leading_monomial(d);
    Rational lc = d.terms().at(ld);
    LaurentPoly rem = n, quot;
    while (!rem.is_zero()) {
        Monomial lr = detail::leading_monomial(rem);
        if (!lr.divisible_by(ld)) return std::nullopt;
        Monomial qm = lr * ld.inverse();
        Rational qc = rem.terms().at(lr) / lc;
        quot.add_term(qm, qc);
        LaurentPoly sub;
        for (const auto& [m, c] : d.terms()) sub.add_term(m * qm, c * qc);
        rem -= sub;
    }
    // Undo the content shift: num/div = (n * sn) / (d * sd).
    LaurentPoly result;
    Monomial shift = sn * sd.inverse();
    for (const auto& [m, c] : quot.terms()) result.add_term(m * shift, c);
    return result;
}

// Exact evaluation at a (necessarily nonzero) rational point.
inline Rational poly_specialize(const LaurentPoly& p,
                                const std::map<VarId, Rational>& assignment) {
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (const auto& [v, e] : m.factors()) {
            auto it = assignment.find(v);
            if (it == assignment.end())
                throw MissingVariable("poly_specialize: no value for " + q_var_name(v));
            if (qshuffle::is_zero(it->second))
                throw ZeroAssignment("poly_specialize: " + q_var_name(v) +
                                     " assigned zero");
            Rational base = it->second;
            int k = e;
            if (k < 0) {
                base = 1 / base;
                k = -k;
            }
            for (int s = 0; s < k; ++s) t *= base;
        }
        acc += t;
    }
    return acc;
}

// Substitute variables by polynomials. Variables appearing with negative
// exponents must be mapped to (unit-coefficient) monomials. Variables not in
// the map are left alone.
inline LaurentPoly poly_substitute(const LaurentPoly& p,
                                   const std::map<VarId, LaurentPoly>& values) {
    LaurentPoly acc;
    for (const auto& [m, c] : p.terms()) {
        LaurentPoly t{Rational(c)};
        for (const auto& [v, e] : m.factors()) {
            auto it = values.find(v);
            if (it == values.end()) {
                t *= LaurentPoly::variable(v, e);
            } else if (e >= 0) {
                t *= it->second.pow(e);
            } else {
                if (!it->second.is_monomial())
                    throw MathError("poly_substitute: negative power of non-monomial value");
                t *= it->second.pow(e);
            }
        }
        acc += t;
    }
    return acc;
}

// The product of q_ij over all ordered pairs i != j drawn from `subset`
// (sigma_S in the q-ring).
inline LaurentPoly sigma_monomial(const std::vector<int>& subset) {
    if (subset.size() < 2)
        throw SubsetTooSmall("sigma_monomial: need at least two indices");
    std::vector<Monomial::Term> t;
    for (int i : subset)
        for (int j : subset)
            if (i != j) t.emplace_back(VarId{i, j}, 1);
    std::sort(t.begin(), t.end());
    return LaurentPoly(Monomial::from_sorted(std::move(t)));
}

// Same object in the sigma-ring: product of sigma_uv over unordered pairs.
inline Monomial sigma_pair_monomial(const std::vector<int>& subset) {
    if (subset.size() < 2)
        throw SubsetTooSmall("sigma_pair_monomial: need at least two indices");
    std::vector<Monomial::Term> t;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            int u = std::min(subset[a], subset[b]);
            int v = std::max(subset[a], subset[b]);
            t.emplace_back(VarId{u, v}, 1);
        }
    std::sort(t.begin(), t.end());
    return Monomial::from_sorted(std::move(t));
}

} // namespace qshuffle
