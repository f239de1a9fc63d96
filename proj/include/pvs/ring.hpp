#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pvs/scalar.hpp"

namespace pvs {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;
struct Tensor;

/// An element of a base field or of a quotient-ring extension tower.
/// Leaf elements hold a Scalar; extension elements hold their residue
/// coordinates (ascending powers of the generator) over the immediate base.
class Elem {
public:
    Elem() = default; // empty handle; using it in arithmetic is a logic error

    Elem(RingPtr ring, Scalar leaf);
    Elem(RingPtr ring, std::vector<Elem> coords);

    const RingPtr& ring() const { return ring_; }
    bool valid() const { return ring_ != nullptr; }

    bool is_leaf() const;
    const Scalar& leaf() const { return leaf_; }
    const std::vector<Elem>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_one() const;

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator*(const Elem& o) const;
    Elem operator-() const;
    Elem inverse() const; // throws NonUnit
    bool is_unit() const;
    Elem pow(const mpz_class& e) const; // e >= 0, or e < 0 via inverse

    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }

    /// Lexicographic order on flattened coordinates; canonical sorting only.
    int compare(const Elem& o) const;

    std::string str() const;

private:
    RingPtr ring_;
    Scalar leaf_;
    std::vector<Elem> coords_;
};

/// Dense univariate polynomial over a ring, coefficients ascending.
struct Poly {
    RingPtr ring;
    std::vector<Elem> c;

    Poly() = default;
    Poly(RingPtr r, std::vector<Elem> coeffs);
    static Poly zero(RingPtr r);
    static Poly from_ints(RingPtr r, const std::vector<long>& coeffs);

    int degree() const; // -1 for the zero polynomial
    bool is_zero() const { return degree() < 0; }
    bool is_monic() const;
    Elem coeff(int i) const; // zero beyond the stored degree

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Elem& s) const;
    Poly derivative() const;
    Elem eval(const Elem& x) const; // x in this->ring

    /// Division with remainder by a divisor whose leading coefficient is a unit.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;

    /// this^e mod f (f monic).
    Poly powmod(const mpz_class& e, const Poly& f) const;

    bool operator==(const Poly& o) const;

    std::string str() const;

private:
    void normalize();
};

/// Monic gcd over a coefficient field (throws NonUnit when a pivot fails to
/// invert, which can only happen over a non-field etale algebra).
Poly poly_gcd(Poly a, Poly b);

/// A validated ring automorphism, identified by its index in the owning
/// ring's automorphism table.  Handles are non-owning: keep the RingPtr alive.
class Aut {
public:
    Aut() = default;

    Elem apply(const Elem& x) const;
    Aut compose(const Aut& inner) const; // this ∘ inner
    Aut inverse() const;
    bool is_identity() const { return idx_ == 0; }
    int index() const { return idx_; }
    int order() const;

    /// Image of the level-j tower generator (0 = outermost) as a ring element.
    Elem level_image(int j) const;

    bool operator==(const Aut& o) const { return ring_ == o.ring_ && idx_ == o.idx_; }

private:
    friend class Ring;
    Aut(const Ring* ring, int idx) : ring_(ring), idx_(idx) {}
    const Ring* ring_ = nullptr;
    int idx_ = 0;
};

/// A base field or an etale extension tower over one.  Instances are
/// immutable and shared; build them through the factories below.
class Ring : public std::enable_shared_from_this<Ring> {
public:
    enum class FieldStatus { Field, Product, Unknown };

    static RingPtr rationals();
    static RingPtr prime_field(std::int64_t p);

    /// Quotient extension with base-fixing automorphisms given by generator
    /// images; validates squarefreeness and root/group conditions, closing
    /// the supplied set under composition.
    static RingPtr make_extension(RingPtr base, const Poly& defining,
                                  const std::vector<Poly>& gen_images);

    /// General form: each automorphism is given by the images of every tower
    /// generator (outermost first) as elements of the new ring.
    static RingPtr make_extension_general(RingPtr base, const Poly& defining,
                                          const std::vector<std::vector<Elem>>& level_images);

    /// Extension of a characteristic-p ring with automorphisms generated by
    /// Frobenius x -> x^p.
    static RingPtr frobenius_extension(RingPtr base, const Poly& defining);

    /// F_{p^degree} as a flat extension of F_p using the deterministically
    /// smallest monic irreducible, with full Frobenius automorphism group.
    static RingPtr finite_field(std::int64_t p, int degree);

    // --- structure ---------------------------------------------------------
    bool is_leaf() const { return base_ == nullptr; }
    std::int64_t characteristic() const { return char_; }
    const RingPtr& base() const { return base_; }
    const Poly& defining() const { return defining_; }
    int degree() const { return degree_; }             // over the immediate base
    int total_degree() const { return total_degree_; } // over the leaf field
    int tower_height() const { return height_; }
    FieldStatus field_status() const { return field_status_; }
    bool is_finite_field() const { return char_ > 0 && field_status_ == FieldStatus::Field; }
    mpz_class field_size() const; // finite fields only

    static bool same(const RingPtr& a, const RingPtr& b);

    // --- automorphisms ------------------------------------------------------
    int aut_count() const { return int(aut_matrices_.size()); }
    Aut aut(int i) const;
    Aut identity_aut() const { return aut(0); }
    /// Unique automorphism of the given order, if exactly one exists.
    std::optional<Aut> unique_aut_of_order(int n) const;

    // --- elements -----------------------------------------------------------
    Elem zero() const;
    Elem one() const;
    Elem from_int(long v) const;
    Elem from_rational(const mpq_class& v) const;
    Elem generator() const;                // top-level generator residue
    Elem embed_base(const Elem& x) const;  // immediate base -> this
    Elem lift(const Elem& x) const;        // any structural ancestor (or self) -> this

    std::vector<Scalar> flatten(const Elem& x) const;
    Elem unflatten(const std::vector<Scalar>& v) const;
    Elem basis_monomial(int leaf_index) const;

    bool in_base(const Elem& x) const;
    Elem to_base(const Elem& x) const; // throws NotRational
    bool in_leaf(const Elem& x) const;
    Scalar to_leaf_scalar(const Elem& x) const; // throws NotRational
    /// Exact coercion to a structural ancestor ring (Galois descent check).
    Elem descend_to(const RingPtr& ancestor, const Elem& x) const;

    // --- algebra ------------------------------------------------------------
    /// Characteristic polynomial of multiplication-by-x over the immediate
    /// base (monic, ascending coefficients); valid in every characteristic.
    Poly char_poly(const Elem& x) const;
    Elem norm(const Elem& x) const;  // in base()
    Elem trace(const Elem& x) const; // in base()
    /// Second characteristic-polynomial coefficient e2 (sum of pairwise
    /// products of conjugates); in base().
    Elem char_poly_e2(const Elem& x) const;
    /// Norm/trace down to a structural ancestor via transitivity.
    Elem norm_rel(const Elem& x, const RingPtr& down_to) const;
    Elem trace_rel(const Elem& x, const RingPtr& down_to) const;

    /// True iff x is a square; supports the rationals, prime fields and
    /// finite extension fields.  Throws ZeroInput on zero.
    bool is_square(const Elem& x) const;

    // random sampling (tests, Hilbert-90 style witnesses)
    Elem random_element(std::mt19937_64& rng, long height = 5) const;
    Elem random_unit(std::mt19937_64& rng, long height = 5) const;

    // internal use by Elem arithmetic
    const Poly& reduction_poly() const { return defining_; }

private:
    friend class Aut;
    friend Tensor tensor_extend(const RingPtr& A, const RingPtr& B);
    Ring() = default;

    struct AutData {
        // flattened leaf coordinates of each level image (outermost first)
        std::vector<std::vector<Scalar>> level_images;
        // leaf-linear action: column j = image of basis monomial j
        std::vector<Scalar> matrix; // D x D row-major
    };

    static std::shared_ptr<Ring> make_raw(RingPtr base, Poly defining);
    void install_automorphisms(std::vector<std::vector<Elem>> level_image_sets, bool close_set);
    void compute_field_status();
    Elem apply_aut(int idx, const Elem& x) const;
    Elem aut_level_image(int idx, int j) const;

    RingPtr base_;             // null for leaf
    Poly defining_;            // over base_
    std::int64_t char_ = 0;    // leaf characteristic
    int degree_ = 1;
    int total_degree_ = 1;
    int height_ = 0;
    FieldStatus field_status_ = FieldStatus::Field;

    std::vector<AutData> aut_matrices_;        // [0] = identity
    std::vector<std::vector<int>> comp_table_; // comp_table_[i][j] = i ∘ j
    std::vector<int> inverse_table_;
};

/// Result of a tensor product A ⊗_k B realized as B[t]/(f_A).
struct Tensor {
    RingPtr product;
    RingPtr left;  // A
    RingPtr right; // B (the product's immediate base, unless degenerate)
    Ring::FieldStatus status = Ring::FieldStatus::Unknown;
    std::vector<int> left_aut_index;  // A's auts -> product auts
    std::vector<int> right_aut_index; // B's auts -> product auts

    Elem embed_left(const Elem& x) const;
    Elem embed_right(const Elem& x) const;
    Elem project_left(const Elem& x) const;  // throws NotRational
    Elem project_right(const Elem& x) const; // throws NotRational
    Aut lifted_left(const Aut& a) const;
    Aut lifted_right(const Aut& a) const;
};

/// B[t]/(f_A) with the automorphisms of both factors lifted componentwise;
/// A and B must extend the same base.
Tensor tensor_extend(const RingPtr& A, const RingPtr& B);

// --- rational helpers -------------------------------------------------------

inline constexpr long kDefaultTrialDivisionBound = 1000000;

/// Signed squarefree core of a nonzero rational, by trial division of the
/// numerator and denominator; throws TrialDivisionExceeded past the bound.
mpz_class squarefree_core(const mpq_class& x, long bound = kDefaultTrialDivisionBound);

/// Prime factorization support with the same bound policy (exponents > 0).
std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n,
                                                      long bound = kDefaultTrialDivisionBound);

/// Rational roots of a polynomial over the rationals (leaf ring must be Q).
std::vector<mpq_class> rational_roots(const Poly& f, long bound = kDefaultTrialDivisionBound);

} // namespace pvs
