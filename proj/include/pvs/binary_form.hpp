#pragma once

#include <string>
#include <vector>

#include "pvs/matrix.hpp"

namespace pvs {

enum class GaloisType { Trivial, Quadratic, CyclicCubic, S3, ReducibleComposite };
std::string galois_type_name(GaloisType t);

/// Isomorphism-class descriptor of the splitting field of a separable binary
/// form.  Over finite fields the extension degree determines everything; over
/// Q the invariant data are squarefree cores and (for cubic fields) the
/// normalized defining polynomial.  Equality is complete only within a fixed
/// construction provenance.
struct ErLabel {
    int splitting_degree = 1; // 1, 2, 3 or 6
    GaloisType type = GaloisType::Trivial;
    bool finite_field = false;
    std::vector<mpz_class> cores;
    std::vector<mpq_class> defining; // ascending monic coefficients

    static ErLabel trivial(bool finite);
    static ErLabel finite_of_degree(int d);
    static ErLabel rational_quadratic(const mpz_class& core);

    bool operator==(const ErLabel& o) const;
    bool operator!=(const ErLabel& o) const { return !(*this == o); }
    std::string str() const;
};

/// Homogeneous form of degree `deg` in (v1, v2); c[i] is the coefficient of
/// v1^{deg-i} v2^i.
struct BinaryForm {
    RingPtr ring;
    int deg = 0;
    std::vector<Elem> c;

    BinaryForm() = default;
    BinaryForm(RingPtr r, int degree, std::vector<Elem> coeffs);
    static BinaryForm from_ints(RingPtr r, const std::vector<long>& coeffs);

    Elem coeff(int i) const { return c[std::size_t(i)]; }
    Elem eval(const Elem& v1, const Elem& v2) const;
    bool is_zero() const;

    BinaryForm operator+(const BinaryForm& o) const;
    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm scaled(const Elem& s) const;
    bool operator==(const BinaryForm& o) const;
    std::string str() const;
};

/// Universal integer-coefficient discriminant (degree 2: a1^2 - 4 a0 a2;
/// degree 3: 18 a0 a1 a2 a3 - 4 a1^3 a3 + a1^2 a2^2 - 4 a0 a2^3 - 27 a0^2 a3^2),
/// hence correct in characteristic 2 and 3 by specialization.
Elem binary_form_disc(const BinaryForm& F);

/// F(v A) for the right substitution v -> v A with a 2x2 matrix A over (an
/// ancestor of) the coefficient ring.
BinaryForm substitute(const BinaryForm& F, const Mat& A);

struct FormFactor {
    BinaryForm form;
    int multiplicity = 1;
};

struct FormFactorization {
    Elem unit;
    std::vector<FormFactor> factors; // canonical order, each factor normalized

    BinaryForm product() const;
};

/// Complete factorization into irreducible binary forms over the coefficient
/// field (Q, a prime field, or a finite extension field); degree <= 3.
FormFactorization factor_binary_form(const BinaryForm& F);

/// Splitting-field label of a separable form of degree 2 or 3.
ErLabel splitting_label(const BinaryForm& F);

} // namespace pvs
