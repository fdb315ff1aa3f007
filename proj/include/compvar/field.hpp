#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace compvar {

/// Field elements are GMP rationals. Over a prime field the canonical
/// representative is the integer residue in [0, p).
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// An exact field: the rationals or a prime field F_p.
///
/// All arithmetic is exact. Dimensions of solution spaces of linear systems
/// with coefficients in the prime field do not change under field extension,
/// which is why computing over Q or F_p is enough for every dimension this
/// library reports, even though the underlying geometry lives over an
/// algebraically closed field.
class Field {
public:
    enum class Kind { rationals, prime };

    static Field rationals() { return Field(Kind::rationals, 0); }
    /// Throws ValidationError unless p is prime and fits in 31 bits.
    static Field prime(std::uint32_t p);

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::rationals; }
    bool is_prime() const noexcept { return kind_ == Kind::prime; }
    /// 0 for the rationals.
    std::uint32_t characteristic() const noexcept { return p_; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar from_int(long v) const;
    /// Canonical representative of an arbitrary rational (denominator must be
    /// invertible mod p for prime fields).
    Scalar reduce(const mpq_class& q) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

    /// Accepts "n", "-n", "n/d".
    Scalar parse(std::string_view text) const;
    std::string format(const Scalar& a) const;
    std::string name() const;

    /// Number of elements, 0 for the rationals.
    std::uint64_t order() const noexcept { return p_; }

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }

private:
    Field(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

    std::uint32_t residue(const Scalar& a) const {
        return static_cast<std::uint32_t>(a.get_num().get_ui());
    }

    Kind kind_;
    std::uint32_t p_;
};

Vector zero_vector(const Field& field, std::size_t n);
bool is_zero_vector(const Field& field, const Vector& v);

}  // namespace compvar
