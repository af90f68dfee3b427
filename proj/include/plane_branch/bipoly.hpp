#ifndef PLANE_BRANCH_BIPOLY_HPP
#define PLANE_BRANCH_BIPOLY_HPP

#include <functional>
#include <map>
#include <ostream>
#include <utility>

#include <plane_branch/rational.hpp>

namespace plane_branch {

// Exponent pair (deg_X, deg_Y).
struct Monomial {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

// Sparse polynomial in X, Y over Q; zero coefficients are never stored.
class BiPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    BiPoly() = default;
    explicit BiPoly(Terms terms)
    {
        for (auto &[m, c] : terms) {
            add_term(m, c);
        }
    }
    static BiPoly monomial(int dx, int dy, const Rational &c = Rational(1))
    {
        BiPoly p;
        p.add_term({dx, dy}, c);
        return p;
    }
    static BiPoly constant(const Rational &c) { return monomial(0, 0, c); }
    static BiPoly X() { return monomial(1, 0); }
    static BiPoly Y() { return monomial(0, 1); }

    [[nodiscard]] const Terms &terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    [[nodiscard]] Rational coeff(int dx, int dy) const
    {
        const auto it = terms_.find({dx, dy});
        return it == terms_.end() ? Rational{} : it->second;
    }

    void add_term(const Monomial &m, const Rational &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    // In the maximal ideal M: no constant term.
    [[nodiscard]] bool in_maximal_ideal() const { return all_terms([](const Monomial &m) { return m.x + m.y >= 1; }); }
    // In M^2: no constant or linear term.
    [[nodiscard]] bool in_maximal_ideal_squared() const
    {
        return all_terms([](const Monomial &m) { return m.x + m.y >= 2; });
    }
    // In <X^2, Y>.
    [[nodiscard]] bool in_x2_y_ideal() const { return all_terms([](const Monomial &m) { return m.x >= 2 || m.y >= 1; }); }

    [[nodiscard]] BiPoly partial_x() const
    {
        BiPoly out;
        for (const auto &[m, c] : terms_) {
            if (m.x > 0) {
                out.add_term({m.x - 1, m.y}, c * Rational(m.x));
            }
        }
        return out;
    }
    [[nodiscard]] BiPoly partial_y() const
    {
        BiPoly out;
        for (const auto &[m, c] : terms_) {
            if (m.y > 0) {
                out.add_term({m.x, m.y - 1}, c * Rational(m.y));
            }
        }
        return out;
    }

    // Keeps only monomials satisfying pred.
    [[nodiscard]] BiPoly filtered(const std::function<bool(const Monomial &)> &pred) const
    {
        BiPoly out;
        for (const auto &[m, c] : terms_) {
            if (pred(m)) {
                out.terms_.emplace(m, c);
            }
        }
        return out;
    }

    BiPoly &operator+=(const BiPoly &o)
    {
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    BiPoly &operator-=(const BiPoly &o)
    {
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    BiPoly &operator*=(const Rational &a)
    {
        if (a.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) {
            c *= a;
        }
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly &b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly &b) { return a -= b; }
    friend BiPoly operator-(BiPoly a) { return a *= Rational(-1); }
    friend BiPoly operator*(BiPoly a, const Rational &r) { return a *= r; }
    friend BiPoly operator*(const Rational &r, BiPoly a) { return a *= r; }
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b)
    {
        BiPoly out;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                out.add_term({ma.x + mb.x, ma.y + mb.y}, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const BiPoly &, const BiPoly &) = default;

private:
    template <typename Pred>
    [[nodiscard]] bool all_terms(Pred pred) const
    {
        for (const auto &[m, c] : terms_) {
            if (!pred(m)) {
                return false;
            }
        }
        return true;
    }

    Terms terms_;
};

inline std::ostream &operator<<(std::ostream &os, const BiPoly &p)
{
    if (p.is_zero()) {
        return os << "0";
    }
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        os << (first ? "" : " + ") << c << "*X^" << m.x << "*Y^" << m.y;
        first = false;
    }
    return os;
}

} // namespace plane_branch

#endif
