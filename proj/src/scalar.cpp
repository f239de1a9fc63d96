#include "pvs/scalar.hpp"

#include <ostream>

namespace pvs {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::NotARoot: return "NotARoot";
        case ErrorCode::NotClosedUnderComposition: return "NotClosedUnderComposition";
        case ErrorCode::BaseMismatch: return "BaseMismatch";
        case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorCode::UnsupportedField: return "UnsupportedField";
        case ErrorCode::DegenerateForm: return "DegenerateForm";
        case ErrorCode::DegeneratePolynomial: return "DegeneratePolynomial";
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::DIsSquare: return "DIsSquare";
        case ErrorCode::ZeroBeta: return "ZeroBeta";
        case ErrorCode::NonUnit: return "NonUnit";
        case ErrorCode::TrialDivisionExceeded: return "TrialDivisionExceeded";
        case ErrorCode::TowerMismatch: return "TowerMismatch";
        case ErrorCode::SingularGroupElement: return "SingularGroupElement";
        case ErrorCode::NormConditionUnsatisfiable: return "NormConditionUnsatisfiable";
        case ErrorCode::NotRational: return "NotRational";
        case ErrorCode::NotSemistable: return "NotSemistable";
        case ErrorCode::CharTwoUnsupported: return "CharTwoUnsupported";
        case ErrorCode::FiberDataMismatch: return "FiberDataMismatch";
        case ErrorCode::UnsupportedGaloisCase: return "UnsupportedGaloisCase";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
    }
    return "UnknownError";
}

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return std::int64_t((__int128)a * b % p);
}

// extended Euclid inverse mod p
std::int64_t invmod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) fail(ErrorCode::NonUnit, "residue not invertible");
    if (t < 0) t += p;
    return t;
}

} // namespace

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return rational(q_ + o.q_);
    return finite(p_, (v_ + o.v_) % p_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return rational(q_ - o.q_);
    return finite(p_, v_ - o.v_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return rational(q_ * o.q_);
    return finite(p_, mulmod(v_, o.v_, p_));
}

Scalar Scalar::operator-() const {
    if (p_ == 0) return rational(-q_);
    return finite(p_, -v_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::NonUnit, "zero has no inverse");
    if (p_ == 0) return rational(1 / q_);
    return finite(p_, invmod(v_, p_));
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ == 0 ? q_ == o.q_ : v_ == o.v_;
}

int Scalar::compare(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return cmp(q_, o.q_);
    return v_ < o.v_ ? -1 : (v_ > o.v_ ? 1 : 0);
}

std::string Scalar::str() const {
    if (p_ != 0) return std::to_string(v_);
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar Scalar::parse(std::int64_t p, const std::string& text) {
    if (text.empty()) fail(ErrorCode::MalformedInput, "empty scalar");
    if (p != 0) {
        try {
            std::size_t pos = 0;
            std::int64_t v = std::stoll(text, &pos);
            if (pos != text.size()) fail(ErrorCode::MalformedInput, "bad residue: " + text);
            return finite(p, v);
        } catch (const std::logic_error&) {
            fail(ErrorCode::MalformedInput, "bad residue: " + text);
        }
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) fail(ErrorCode::MalformedInput, "bad rational: " + text);
    if (q.get_den() == 0) fail(ErrorCode::MalformedInput, "zero denominator: " + text);
    return rational(q);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace pvs
