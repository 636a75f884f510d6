#include "souslin/rat.hpp"

#include <cctype>
#include <ostream>

namespace souslin {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rat Rat::parse(const std::string& text) {
    const std::size_t slash = text.find('/');
    const std::string num_part = slash == std::string::npos ? text : text.substr(0, slash);
    std::size_t num_digits_from = 0;
    if (!num_part.empty() && (num_part[0] == '-' || num_part[0] == '+')) num_digits_from = 1;
    if (!all_digits(num_part, num_digits_from, num_part.size())) {
        throw invalid_input("Rat::parse: malformed rational \"" + text + "\"");
    }
    mpz_class num(num_part);
    if (slash == std::string::npos) return Rat(num);

    const std::string den_part = text.substr(slash + 1);
    if (!all_digits(den_part, 0, den_part.size())) {
        throw invalid_input("Rat::parse: malformed rational \"" + text + "\"");
    }
    mpz_class den(den_part);
    if (den == 0) {
        throw invalid_input("Rat::parse: zero denominator in \"" + text + "\"");
    }
    return Rat(num, den);
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rat::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

bool Rat::is_dyadic() const {
    mpz_class d = v_.get_den();
    // The canonical denominator is positive; strip factors of two.
    while (mpz_even_p(d.get_mpz_t())) d >>= 1;
    return d == 1;
}

Rat Rat::scaled_down(unsigned long k) const {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, k);
    return Rat(v_.get_num(), v_.get_den() * p2);
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.v_ == 0) throw invalid_input("Rat: division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat pow2_neg(unsigned long k) {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, k);
    return Rat(mpz_class(1), p2);
}

}  // namespace souslin
