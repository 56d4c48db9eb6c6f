#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratiocert {

using Integer = boost::multiprecision::cpp_int;

// Floor division: unique q with a = q*b + s, 0 <= s < |b|.  cpp_int's
// operator/ truncates toward zero, which is wrong for negative operands.
inline Integer floor_div(const Integer& a, const Integer& b) {
    assert(b != 0 && "floor_div by zero");
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Exact rational with reduced form and positive denominator as invariants.
// The representation is boost's cpp_rational, which maintains both; the
// wrapper exists to pin the contract (sign normalization on construction,
// Euclidean floor, canonical "num/den" text) independent of the backend.
class Rational {
  public:
    using backend_type = boost::multiprecision::cpp_rational;

    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(Integer num, Integer den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        v_ = backend_type(num, den);
    }

    Integer num() const { return boost::multiprecision::numerator(v_); }
    Integer den() const { return boost::multiprecision::denominator(v_); }

    bool is_integer() const { return den() == 1; }
    bool is_zero() const { return v_.is_zero(); }

    Integer floor() const { return floor_div(num(), den()); }

    Rational operator-() const { return Rational(backend_type(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // Canonical text form, always "num/den" (so "20/1", "-3/2").
    std::string str() const { return num().str() + "/" + den().str(); }

    const backend_type& backend() const { return v_; }

  private:
    explicit Rational(backend_type v) : v_(std::move(v)) {}

    backend_type v_;
};

using RationalPoint = std::vector<Rational>;

inline Rational abs(const Rational& q) { return q < Rational(0) ? -q : q; }

// Factorials memoized per thread up to the largest argument seen.
inline const Integer& factorial(std::size_t m) {
    thread_local std::vector<Integer> cache{Integer(1)};
    while (cache.size() <= m) cache.push_back(cache.back() * Integer(cache.size()));
    return cache[m];
}

// Harmonic number H_m = 1 + 1/2 + ... + 1/m, with H_0 = 0.
inline Rational harmonic(std::size_t m) {
    thread_local std::vector<Rational> cache{Rational(0)};
    while (cache.size() <= m)
        cache.push_back(cache.back() + Rational(Integer(1), Integer(cache.size())));
    return cache[m];
}

}  // namespace ratiocert
