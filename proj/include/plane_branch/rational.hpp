#ifndef PLANE_BRANCH_RATIONAL_HPP
#define PLANE_BRANCH_RATIONAL_HPP

#include <cassert>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <plane_branch/errors.hpp>

namespace plane_branch {

// Exact rational number in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {} // NOLINT(google-explicit-constructor)
    Rational(int v) : value_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den)
    {
        if (den == 0) {
            throw InputError("rational with zero denominator");
        }
        value_ = mpq_class(mpz_class(num), mpz_class(den));
        value_.canonicalize();
        assert(is_canonical());
    }
    explicit Rational(mpq_class v) : value_(std::move(v))
    {
        value_.canonicalize();
        assert(is_canonical());
    }

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        auto trim = [](std::string &x) {
            const auto b = x.find_first_not_of(" \t");
            const auto e = x.find_last_not_of(" \t");
            x = (b == std::string::npos) ? std::string{} : x.substr(b, e - b + 1);
        };
        trim(s);
        if (s.empty()) {
            throw InputError("empty rational literal");
        }
        const auto slash = s.find('/');
        auto parse_int = [&](std::string part) {
            trim(part);
            if (part.empty() || part.find_first_not_of("+-0123456789") != std::string::npos
                || part.find_first_of("+-", 1) != std::string::npos) {
                throw InputError("malformed rational literal '" + s + "'");
            }
            if (part[0] == '+') {
                part.erase(0, 1);
            }
            if (part.empty() || part == "-") {
                throw InputError("malformed rational literal '" + s + "'");
            }
            return mpz_class(part, 10);
        };
        if (slash == std::string::npos) {
            return Rational(mpq_class(parse_int(s)));
        }
        const mpz_class num = parse_int(s.substr(0, slash));
        const mpz_class den = parse_int(s.substr(slash + 1));
        if (den == 0) {
            throw InputError("rational with zero denominator '" + s + "'");
        }
        return Rational(mpq_class(num, den));
    }

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
    [[nodiscard]] const mpq_class &raw() const { return value_; }
    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }

    [[nodiscard]] bool is_canonical() const
    {
        if (value_.get_den() <= 0) {
            return false;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
        return g == 1;
    }

    [[nodiscard]] std::string str() const
    {
        if (is_integer()) {
            return value_.get_num().get_str();
        }
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    [[nodiscard]] Rational inverse() const
    {
        if (is_zero()) {
            throw InternalError("inverse of zero rational");
        }
        return Rational(mpq_class(1) / value_);
    }

    // Integer power; negative exponents invert.
    [[nodiscard]] Rational pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        mpz_class n;
        mpz_class d;
        mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(mpq_class(n, d));
    }

    Rational &operator+=(const Rational &o)
    {
        value_ += o.value_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        value_ -= o.value_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        value_ *= o.value_;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw InternalError("division by zero rational");
        }
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

// binom(a, j) for rational a as the falling product a(a-1)...(a-j+1)/j!, term by term.
inline Rational binomial(const Rational &a, int j)
{
    Rational out(1);
    for (int i = 0; i < j; ++i) {
        out *= (a - Rational(i)) / Rational(i + 1);
    }
    return out;
}

} // namespace plane_branch

#endif
