#include "compvar/field.hpp"

#include "compvar/errors.hpp"

#include <cctype>

namespace compvar {

namespace {

bool is_prime_number(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime_number(p))
        throw ValidationError("field characteristic " + std::to_string(p) + " is not a supported prime");
    return Field(Kind::prime, p);
}

Scalar Field::from_int(long v) const {
    if (is_rational()) return Scalar(v);
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return Scalar(r);
}

Scalar Field::reduce(const mpq_class& q) const {
    if (is_rational()) {
        Scalar r(q);
        r.canonicalize();
        return r;
    }
    mpz_class num = q.get_num() % p_;
    if (num < 0) num += p_;
    mpz_class den = q.get_den() % p_;
    if (den == 0) throw ValidationError("denominator is not invertible in " + name());
    std::uint64_t n = num.get_ui(), d = den.get_ui();
    return Scalar(static_cast<unsigned long>(n * mod_inverse(d, p_) % p_));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a + b;
    std::uint64_t s = std::uint64_t(residue(a)) + residue(b);
    if (s >= p_) s -= p_;
    return Scalar(static_cast<unsigned long>(s));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a - b;
    std::uint64_t s = std::uint64_t(residue(a)) + p_ - residue(b);
    if (s >= p_) s -= p_;
    return Scalar(static_cast<unsigned long>(s));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a * b;
    return Scalar(static_cast<unsigned long>(std::uint64_t(residue(a)) * residue(b) % p_));
}

Scalar Field::neg(const Scalar& a) const {
    if (is_rational()) return -a;
    std::uint32_t r = residue(a);
    return Scalar(static_cast<unsigned long>(r == 0 ? 0 : p_ - r));
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    if (is_rational()) return 1 / a;
    return Scalar(static_cast<unsigned long>(mod_inverse(residue(a), p_)));
}

Scalar Field::parse(std::string_view text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty scalar");
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || ((c == '-' || c == '+') && i == 0);
        if (!ok) throw ParseError("malformed scalar '" + s + "'");
    }
    mpq_class q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw ParseError("malformed scalar '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return reduce(q);
}

std::string Field::format(const Scalar& a) const { return a.get_str(); }

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

Vector zero_vector(const Field& field, std::size_t n) { return Vector(n, field.zero()); }

bool is_zero_vector(const Field& field, const Vector& v) {
    for (const auto& x : v)
        if (!field.is_zero(x)) return false;
    return true;
}

}  // namespace compvar
