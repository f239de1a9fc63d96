#pragma once

#include "pvs/binary_form.hpp"

namespace pvs {

/// A quadratic etale algebra ext/base with its designated involution; the
/// coefficient structure for Hermitian pencils.
struct HermTower {
    RingPtr base;
    RingPtr ext;
    Aut sigma;

    /// ext must be quadratic over its base with exactly one nontrivial
    /// base-fixing automorphism.
    static HermTower make(RingPtr ext);
    /// Explicit involution (used for computations in composite algebras).
    static HermTower make(RingPtr base, RingPtr ext, Aut sigma);
};

/// A point of the space: a pair of n x n Hermitian matrices over ext,
/// i.e. transpose-conjugate fixed: (x_i)^t applied by sigma equals x_i.
struct HermPair {
    HermTower tower;
    Mat x1, x2;

    int n() const { return x1.rows; }
};

/// (g1, g2) in GL_n(ext) x GL_2(base).
struct HermGroupElem {
    HermTower tower;
    Mat g1;
    Mat g2;

    int n() const { return g1.rows; }
};

HermPair make_herm_pair(const HermTower& t, Mat x1, Mat x2);
HermGroupElem make_herm_group(const HermTower& t, Mat g1, Mat g2);

HermGroupElem herm_mul(const HermGroupElem& a, const HermGroupElem& b);
HermGroupElem herm_inv(const HermGroupElem& g);

/// Left action: the pencil of the result is g1 M(v g2) (g1^sigma)^t.
HermPair herm_act(const HermGroupElem& g, const HermPair& x);

/// det(v1 x1 + v2 x2) as a degree-n binary form over ext.
BinaryForm herm_pencil_det(const HermPair& x);

/// The relative invariant: the pencil determinant with coefficients
/// certified to lie in the base field.
BinaryForm herm_invariant_form(const HermPair& x);

/// Discriminant of the invariant form (in base); zero iff not semistable.
Elem herm_delta(const HermPair& x);
bool herm_semistable(const HermPair& x);

/// Splitting-field label of the invariant form; requires semistability.
ErLabel herm_classify(const HermPair& x);

} // namespace pvs
