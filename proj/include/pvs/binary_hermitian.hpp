#pragma once

#include "pvs/hermitian_space.hpp"

namespace pvs {

/// The distinguished point w: pencil v1 diag(1,0) + v2 diag(0,1).
HermPair make_w1(const HermTower& t);

/// tau = (antidiag(1,1), antidiag(1,1)); stabilizes w and swaps the two
/// rational points of its zero scheme.
HermGroupElem make_tau1(const HermTower& t);

/// Context for the orbit representative attached to a separable monic
/// quadratic f = v1^2 + a1 v1 v2 + a2 v2^2 over the base.
struct Case1Alpha {
    HermTower tower;
    BinaryForm f;
    RingPtr k_alpha;     // base[a]/(a^2 + a1 a + a2) with the root swap
    Elem alpha1, alpha2; // distinguished root and its swap image
    Tensor comp;         // ext (x) k_alpha
    Aut sigma_hat;       // involution of comp fixing k_alpha
    Aut nu_hat;          // involution of comp fixing ext
    HermPair w_alpha;    // pencil with the explicit rational matrices
};

Case1Alpha make_w_alpha1(const HermTower& t, const BinaryForm& f);

/// Torus element of the stabilizer of w from (t11, t12) in ext^x:
/// (diag(t11, t12), diag(N(t11)^-1, N(t12)^-1)).
HermGroupElem stab1_w(const HermTower& t, const Elem& t11, const Elem& t12);

/// Stabilizer element of w_alpha from t11 in comp^x with t12 = t11^nu,
/// conjugated back and coerced to rational coordinates by exact descent.
HermGroupElem stab1_w_alpha(const Case1Alpha& ctx, const Elem& t11);

} // namespace pvs
