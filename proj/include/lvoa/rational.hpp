#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace lvoa {

// Exact rational number. Values that fit in int64 numerator/denominator stay
// inline; anything larger is promoted to a GMP rational and demoted back when
// it fits again. Always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& o);
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&&) noexcept = default;
    ~Rational() = default;

    // Parses "p", "-p" or "p/q".
    static Rational parse(const std::string& text);

    [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] bool is_small() const { return !big_; }
    [[nodiscard]] int sign() const;
    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] std::string str() const;
    // Numerator and denominator; throws if they do not fit in int64.
    [[nodiscard]] std::int64_t num() const;
    [[nodiscard]] std::int64_t den() const;
    // Exact integer value; throws std::domain_error if not an integer.
    [[nodiscard]] std::int64_t to_int() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] Rational floor() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);
    // this += a * b, the hot path of elimination.
    void add_mul(const Rational& a, const Rational& b);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    [[nodiscard]] std::size_t hash() const;

private:
    void set_big(mpq_class q);
    void set_from_i128(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Generalized binomial coefficient C(n, k) for any integer n and k >= 0.
Rational binomial(std::int64_t n, std::int64_t k);

}  // namespace lvoa
