#include "lvoa/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lvoa {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = -kMax;  // keep INT64_MIN out so negation is safe

bool fits(__int128 v) { return v >= kMin && v <= kMax; }

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (a <= kMax && b <= kMax)
        return static_cast<__int128>(std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    auto hi = static_cast<std::uint64_t>(u >> 64);
    auto lo = static_cast<std::uint64_t>(u);
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(lo), 0, 0, &hi);
    z <<= 64;
    mpz_class l;
    mpz_import(l.get_mpz_t(), 1, 1, sizeof(lo), 0, 0, &lo);
    z += l;
    if (neg) z = -z;
    return z;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    set_from_i128(n, d);
}

Rational::Rational(const mpq_class& q) { set_big(q); }

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_) {
        if (big_) *big_ = *o.big_;
        else big_ = std::make_unique<mpq_class>(*o.big_);
    } else {
        big_.reset();
    }
    return *this;
}

Rational Rational::parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    return Rational(q);
}

void Rational::set_from_i128(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    if (d == 1 && fits(n)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = 1;
        big_.reset();
        return;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
        return;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    set_big(std::move(q));
}

void Rational::set_big(mpq_class q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
        return;
    }
    num_ = 0;
    den_ = 1;
    if (big_) *big_ = std::move(q);
    else big_ = std::make_unique<mpq_class>(std::move(q));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t Rational::num() const {
    if (big_) throw std::overflow_error("Rational: numerator exceeds int64");
    return num_;
}

std::int64_t Rational::den() const {
    if (big_) throw std::overflow_error("Rational: denominator exceeds int64");
    return den_;
}

std::int64_t Rational::to_int() const {
    if (!is_integer()) throw std::domain_error("Rational: not an integer: " + str());
    if (big_) throw std::overflow_error("Rational: integer exceeds int64");
    return num_;
}

double Rational::to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

Rational Rational::floor() const {
    if (!big_) {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return Rational(q);
    }
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(mpq_class(fl));
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            __int128 s = static_cast<__int128>(num_) + o.num_;
            if (fits(s)) {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        if (den_ == o.den_) {
            set_from_i128(static_cast<__int128>(num_) + o.num_, den_);
            return *this;
        }
        __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        set_from_i128(n, d);
        return *this;
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (!big_ && !o.big_) {
        __int128 n = static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        set_from_i128(n, d);
        return *this;
    }
    set_big(to_mpq() - o.to_mpq());
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            __int128 p = static_cast<__int128>(num_) * o.num_;
            if (fits(p)) {
                num_ = static_cast<std::int64_t>(p);
                return *this;
            }
        }
        set_from_i128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
        return *this;
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_) {
        set_from_i128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
        return *this;
    }
    set_big(to_mpq() / o.to_mpq());
    return *this;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_) {
        // Products of int64 pairs fit in int128; the cross terms below need care.
        __int128 pn = static_cast<__int128>(a.num_) * b.num_;
        __int128 pd = static_cast<__int128>(a.den_) * b.den_;
        if (pd == 1 && den_ == 1) {
            __int128 s = pn + num_;
            if (fits(pn) && fits(s)) {
                num_ = static_cast<std::int64_t>(s);
                return;
            }
        }
        if (pd == den_ && fits(pn)) {
            set_from_i128(pn + num_, pd);
            return;
        }
        if (fits(pn) && fits(pd)) {
            __int128 g = gcd128(pn, pd);
            if (g > 1) {
                pn /= g;
                pd /= g;
            }
            __int128 n = pn * den_ + static_cast<__int128>(num_) * pd;
            // pn, pd, num_, den_ all below 2^63 so each product is below 2^126.
            __int128 d = pd * den_;
            set_from_i128(n, d);
            return;
        }
    }
    set_big(to_mpq() + a.to_mpq() * b.to_mpq());
}

Rational Rational::operator-() const {
    Rational r(*this);
    if (r.big_) *r.big_ = -*r.big_;
    else r.num_ = -r.num_;
    return r;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical forms differ in representation only when values differ
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational binomial(std::int64_t n, std::int64_t k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (std::int64_t i = 0; i < k; ++i) {
        r *= Rational(n - i);
        r /= Rational(i + 1);
    }
    return r;
}

}  // namespace lvoa
