#include "pcsamp/rational.hpp"

#include <cctype>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pcsamp {

namespace {

bool is_signed_digits(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.q_ == 0) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    const std::string_view s = trim(text);
    const auto bad = [&] {
        return std::invalid_argument("not an exact rational: \"" + std::string(text) + "\"");
    };

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = trim(s.substr(0, slash));
        const auto den = trim(s.substr(slash + 1));
        if (!is_signed_digits(num) || !is_signed_digits(den) || den.front() == '-' || den.front() == '+') throw bad();
        mpz_class d = parse_integer(den);
        if (d == 0) throw bad();
        mpq_class q(parse_integer(num), d);
        return Rational(std::move(q));
    }

    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto fraction = s.substr(dot + 1);
        const bool negative = !whole.empty() && whole.front() == '-';
        const auto whole_digits = (whole == "-" || whole == "+" || whole.empty()) ? std::string_view("0") : whole;
        if (!is_signed_digits(whole_digits) || fraction.empty() || !is_signed_digits(fraction) ||
            fraction.front() == '-' || fraction.front() == '+')
            throw bad();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
        mpz_class w = parse_integer(whole_digits);
        if (w < 0) w = -w;
        mpz_class num = w * scale + parse_integer(fraction);
        if (negative) num = -num;
        return Rational(mpq_class(num, scale));
    }

    if (!is_signed_digits(s)) throw bad();
    return Rational(mpq_class(parse_integer(s)));
}

Rational Rational::floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Rational(mpq_class(f));
}

Rational Rational::ceil() const {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Rational(mpq_class(c));
}

std::int64_t Rational::to_int64() const {
    if (!is_integer()) throw std::domain_error("Rational " + str() + " is not an integer");
    const mpz_class& n = q_.get_num();
    if (!n.fits_slong_p()) throw std::domain_error("Rational " + str() + " overflows int64");
    return n.get_si();
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int significant_digits) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, to_double());
    return buf;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pcsamp
