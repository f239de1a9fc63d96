#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "pvs/errors.hpp"

namespace pvs {

/// An exact scalar in the base field: a rational number (characteristic 0) or
/// a residue in a prime field F_p.  All arithmetic is exact; there is no
/// floating point anywhere in the library.
class Scalar {
public:
    /// Rational zero.
    Scalar() = default;

    static Scalar rational(mpq_class v) {
        Scalar s;
        s.q_ = std::move(v);
        s.q_.canonicalize();
        return s;
    }
    static Scalar rational(long num, long den = 1) { return rational(mpq_class(num, den)); }

    static Scalar finite(std::int64_t p, std::int64_t v) {
        if (p < 2) fail(ErrorCode::MalformedInput, "prime field characteristic must be >= 2");
        if (p >= (std::int64_t(1) << 31)) fail(ErrorCode::MalformedInput, "characteristic too large");
        Scalar s;
        s.p_ = p;
        s.v_ = v % p;
        if (s.v_ < 0) s.v_ += p;
        return s;
    }

    std::int64_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }

    bool is_zero() const { return p_ == 0 ? q_ == 0 : v_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : v_ == 1; }

    const mpq_class& rat() const { return q_; }
    std::int64_t residue() const { return v_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const; // throws NonUnit on zero
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Total order used only for canonical sorting of outputs.
    int compare(const Scalar& o) const;

    /// Canonical text form: lowest-terms "n" or "n/d" for rationals, the
    /// residue in [0, p) for prime fields.
    std::string str() const;

    static Scalar parse(std::int64_t p, const std::string& text);

private:
    void check_same_field(const Scalar& o) const {
        if (p_ != o.p_) fail(ErrorCode::BaseMismatch, "scalars from different base fields");
    }

    std::int64_t p_ = 0; // 0 = rationals, otherwise the prime
    std::int64_t v_ = 0; // residue when p_ > 0
    mpq_class q_;        // value when p_ == 0
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace pvs
