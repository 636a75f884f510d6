#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace souslin {

// Thrown when an input value is outside an operation's domain.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact rational number, always kept in reduced form with positive denominator.
// Thin value wrapper over GMP's mpq_class; all arithmetic is exact.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, unsigned long d) : v_(n, d) { canonicalize(); }
    explicit Rat(const mpq_class& v) : v_(v) { canonicalize(); }
    explicit Rat(const mpz_class& n) : v_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) { canonicalize(); }

    // Parses "p", "-p", "p/q". Rejects zero denominators and malformed text.
    static Rat parse(const std::string& text);

    // Canonical text form "p/q" with q > 0, always including the denominator.
    std::string str() const;

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    // Largest integer <= value.
    mpz_class floor() const;
    // True iff the denominator is a power of two (integers included).
    bool is_dyadic() const;

    // Value * 2^-k, exactly.
    Rat scaled_down(unsigned long k) const;

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

  private:
    void canonicalize() { v_.canonicalize(); }
    mpq_class v_;
};

// 2^-k as an exact rational.
Rat pow2_neg(unsigned long k);

}  // namespace souslin
