#include "pvs/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pvs {

// ---------------------------------------------------------------------------
// Elem
// ---------------------------------------------------------------------------

Elem::Elem(RingPtr ring, Scalar leaf) : ring_(std::move(ring)), leaf_(std::move(leaf)) {
    if (!ring_ || !ring_->is_leaf()) fail(ErrorCode::BaseMismatch, "scalar element needs a leaf ring");
    if (leaf_.characteristic() != ring_->characteristic())
        fail(ErrorCode::BaseMismatch, "scalar characteristic does not match ring");
}

Elem::Elem(RingPtr ring, std::vector<Elem> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
    if (!ring_ || ring_->is_leaf()) fail(ErrorCode::BaseMismatch, "coordinate element needs an extension ring");
    if (int(coords_.size()) > ring_->degree())
        fail(ErrorCode::BaseMismatch, "too many coordinates for extension degree");
    while (int(coords_.size()) < ring_->degree()) coords_.push_back(ring_->base()->zero());
}

bool Elem::is_leaf() const { return ring_ && ring_->is_leaf(); }

bool Elem::is_zero() const {
    if (is_leaf()) return leaf_.is_zero();
    return std::all_of(coords_.begin(), coords_.end(), [](const Elem& c) { return c.is_zero(); });
}

bool Elem::is_one() const {
    if (is_leaf()) return leaf_.is_one();
    if (!coords_[0].is_one()) return false;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

Elem Elem::operator+(const Elem& o) const {
    if (is_leaf()) return Elem(ring_, leaf_ + o.leaf_);
    std::vector<Elem> c(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i] + o.coords_[i];
    return Elem(ring_, std::move(c));
}

Elem Elem::operator-(const Elem& o) const {
    if (is_leaf()) return Elem(ring_, leaf_ - o.leaf_);
    std::vector<Elem> c(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i] - o.coords_[i];
    return Elem(ring_, std::move(c));
}

Elem Elem::operator-() const {
    if (is_leaf()) return Elem(ring_, -leaf_);
    std::vector<Elem> c(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = -coords_[i];
    return Elem(ring_, std::move(c));
}

Elem Elem::operator*(const Elem& o) const {
    if (is_leaf()) return Elem(ring_, leaf_ * o.leaf_);
    Poly a(ring_->base(), coords_);
    Poly b(ring_->base(), o.coords_);
    Poly prod = a * b;
    Poly rem = prod.divmod(ring_->reduction_poly()).second;
    std::vector<Elem> c(rem.c);
    return Elem(ring_, std::move(c));
}

bool Elem::is_unit() const {
    if (is_leaf()) return !leaf_.is_zero();
    try {
        inverse();
        return true;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NonUnit) return false;
        throw;
    }
}

Elem Elem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    Elem result = ring_->one();
    if (e == 0) return result;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
    }
    return result;
}

bool Elem::operator==(const Elem& o) const {
    if (is_leaf() != o.is_leaf()) return false;
    if (is_leaf()) return leaf_ == o.leaf_;
    if (coords_.size() != o.coords_.size()) return false;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!(coords_[i] == o.coords_[i])) return false;
    return true;
}

int Elem::compare(const Elem& o) const {
    std::vector<Scalar> a = ring_->flatten(*this);
    std::vector<Scalar> b = o.ring()->flatten(o);
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Elem::str() const {
    if (is_leaf()) return leaf_.str();
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ", ";
        os << coords_[i].str();
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

Poly::Poly(RingPtr r, std::vector<Elem> coeffs) : ring(std::move(r)), c(std::move(coeffs)) { normalize(); }

Poly Poly::zero(RingPtr r) { return Poly(std::move(r), {}); }

Poly Poly::from_ints(RingPtr r, const std::vector<long>& coeffs) {
    std::vector<Elem> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(r->from_int(v));
    return Poly(std::move(r), std::move(c));
}

void Poly::normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int Poly::degree() const { return int(c.size()) - 1; }

bool Poly::is_monic() const { return degree() >= 0 && c.back().is_one(); }

Elem Poly::coeff(int i) const {
    if (i < 0 || i >= int(c.size())) return ring->zero();
    return c[std::size_t(i)];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Elem> r(std::max(c.size(), o.c.size()), ring->zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c.size()) r[i] = r[i] + c[i];
        if (i < o.c.size()) r[i] = r[i] + o.c[i];
    }
    return Poly(ring, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Elem> r(std::max(c.size(), o.c.size()), ring->zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c.size()) r[i] = r[i] + c[i];
        if (i < o.c.size()) r[i] = r[i] - o.c[i];
    }
    return Poly(ring, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly::zero(ring);
    std::vector<Elem> r(c.size() + o.c.size() - 1, ring->zero());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] = r[i + j] + c[i] * o.c[j];
    return Poly(ring, std::move(r));
}

Poly Poly::scaled(const Elem& s) const {
    std::vector<Elem> r(c);
    for (auto& x : r) x = x * s;
    return Poly(ring, std::move(r));
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly::zero(ring);
    std::vector<Elem> r(c.size() - 1, ring->zero());
    for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * ring->from_int(long(i));
    return Poly(ring, std::move(r));
}

Elem Poly::eval(const Elem& x) const {
    Elem acc = x.ring()->zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + x.ring()->lift(c[i]);
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (divisor.is_zero()) fail(ErrorCode::NonUnit, "division by zero polynomial");
    Elem lead_inv = divisor.c.back().inverse(); // throws NonUnit over non-fields
    std::vector<Elem> rem(c);
    int dd = divisor.degree();
    int dr = int(rem.size()) - 1;
    if (dr < dd) return {Poly::zero(ring), *this};
    std::vector<Elem> quot(dr - dd + 1, ring->zero());
    for (int k = dr; k >= dd; --k) {
        if (rem[k].is_zero()) continue;
        Elem q = rem[k] * lead_inv;
        quot[k - dd] = q;
        for (int i = 0; i <= dd; ++i) rem[k - dd + i] = rem[k - dd + i] - q * divisor.c[i];
    }
    return {Poly(ring, std::move(quot)), Poly(ring, std::move(rem))};
}

Poly Poly::powmod(const mpz_class& e, const Poly& f) const {
    Poly result(ring, {ring->one()});
    Poly base = divmod(f).second;
    if (e == 0) return result;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result).divmod(f).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base).divmod(f).second;
    }
    return result;
}

bool Poly::operator==(const Poly& o) const {
    if (degree() != o.degree()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!(c[i] == o.c[i])) return false;
    return true;
}

std::string Poly::str() const {
    std::ostringstream os;
    os << "poly[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ", ";
        os << c[i].str();
    }
    os << "]";
    return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(a.c.back().inverse());
}

// ---------------------------------------------------------------------------
// Linear algebra over scalars (leaf field): exact Gaussian elimination
// ---------------------------------------------------------------------------

namespace {

// Solve M y = rhs (square). Returns nullopt when M is singular.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> M,
                                                std::vector<Scalar> rhs) {
    const int n = int(M.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!M[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(M[pivot], M[col]);
        std::swap(rhs[pivot], rhs[col]);
        Scalar inv = M[col][col].inverse();
        for (int j = col; j < n; ++j) M[col][j] = M[col][j] * inv;
        rhs[col] = rhs[col] * inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || M[r][col].is_zero()) continue;
            Scalar f = M[r][col];
            for (int j = col; j < n; ++j) M[r][j] = M[r][j] - f * M[col][j];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    return rhs;
}

bool matrix_invertible(const std::vector<std::vector<Scalar>>& M) {
    std::vector<std::vector<Scalar>> A = M;
    const int n = int(A.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!A[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        std::swap(A[pivot], A[col]);
        Scalar inv = A[col][col].inverse();
        for (int j = col; j < n; ++j) A[col][j] = A[col][j] * inv;
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col].is_zero()) continue;
            Scalar f = A[r][col];
            for (int j = col; j < n; ++j) A[r][j] = A[r][j] - f * A[col][j];
        }
    }
    return true;
}

// Samuelson-Berkowitz: division-free characteristic polynomial of a square
// matrix over a commutative ring.  Returns det(tI - A) descending, V[0] = 1.
std::vector<Elem> berkowitz(const std::vector<std::vector<Elem>>& A, const RingPtr& ring) {
    const int n = int(A.size());
    std::vector<Elem> V = {ring->one(), -A[0][0]};
    for (int i = 1; i < n; ++i) {
        // q[0] = A[i][i], q[j] = R M^{j-1} C with R = row i, C = col i, M = leading i x i block
        std::vector<Elem> q(i + 1, ring->zero());
        q[0] = A[i][i];
        std::vector<Elem> u(i);
        for (int r = 0; r < i; ++r) u[r] = A[r][i];
        for (int j = 1; j <= i; ++j) {
            Elem dot = ring->zero();
            for (int r = 0; r < i; ++r) dot = dot + A[i][r] * u[r];
            q[j] = dot;
            if (j < i) {
                std::vector<Elem> nu(i, ring->zero());
                for (int r = 0; r < i; ++r)
                    for (int s = 0; s < i; ++s) nu[r] = nu[r] + A[r][s] * u[s];
                u = std::move(nu);
            }
        }
        // Toeplitz column [1, -q0, ..., -qi]; V_new has length i+2
        std::vector<Elem> tcol(i + 2, ring->zero());
        tcol[0] = ring->one();
        for (int j = 0; j <= i; ++j) tcol[j + 1] = -q[j];
        std::vector<Elem> Vn(i + 2, ring->zero());
        for (int r = 0; r < i + 2; ++r)
            for (int col = 0; col < std::min(r + 1, i + 1); ++col)
                Vn[r] = Vn[r] + tcol[r - col] * V[col];
        V = std::move(Vn);
    }
    return V;
}

} // namespace

// ---------------------------------------------------------------------------
// Ring
// ---------------------------------------------------------------------------

std::shared_ptr<Ring> Ring::make_raw(RingPtr base, Poly defining) {
    auto r = std::shared_ptr<Ring>(new Ring());
    r->base_ = std::move(base);
    r->defining_ = std::move(defining);
    r->char_ = r->base_->characteristic();
    r->degree_ = r->defining_.degree();
    r->total_degree_ = r->degree_ * r->base_->total_degree();
    r->height_ = r->base_->tower_height() + 1;
    return r;
}

RingPtr Ring::rationals() {
    static RingPtr q = [] {
        auto r = std::shared_ptr<Ring>(new Ring());
        r->char_ = 0;
        r->aut_matrices_.push_back({{}, {Scalar::rational(1)}});
        r->comp_table_ = {{0}};
        r->inverse_table_ = {0};
        return RingPtr(r);
    }();
    return q;
}

RingPtr Ring::prime_field(std::int64_t p) {
    if (p < 2) fail(ErrorCode::MalformedInput, "characteristic must be a prime >= 2");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(ErrorCode::MalformedInput, "characteristic must be prime");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->char_ = p;
    r->aut_matrices_.push_back({{}, {Scalar::finite(p, 1)}});
    r->comp_table_ = {{0}};
    r->inverse_table_ = {0};
    return r;
}

mpz_class Ring::field_size() const {
    if (char_ == 0 || field_status_ != FieldStatus::Field)
        fail(ErrorCode::UnsupportedField, "field_size requires a finite field");
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(char_), static_cast<unsigned long>(total_degree_));
    return q;
}

bool Ring::same(const RingPtr& a, const RingPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->is_leaf() != b->is_leaf()) return false;
    if (a->characteristic() != b->characteristic()) return false;
    if (a->is_leaf()) return true;
    if (a->degree() != b->degree()) return false;
    if (!same(a->base(), b->base())) return false;
    if (!(a->defining() == b->defining())) return false;
    if (a->aut_count() != b->aut_count()) return false;
    // compare automorphism tables as sorted sets of flattened matrices
    auto key = [](const Ring& r) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& ad : r.aut_matrices_) {
            std::vector<std::string> m;
            for (const auto& s : ad.matrix) m.push_back(s.str());
            rows.push_back(std::move(m));
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    return key(*a) == key(*b);
}

Elem Ring::zero() const {
    if (is_leaf()) return Elem(shared_from_this(), char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0));
    return Elem(shared_from_this(), std::vector<Elem>{});
}

Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(long v) const {
    if (is_leaf())
        return Elem(shared_from_this(), char_ == 0 ? Scalar::rational(v) : Scalar::finite(char_, v));
    std::vector<Elem> c = {base_->from_int(v)};
    return Elem(shared_from_this(), std::move(c));
}

Elem Ring::from_rational(const mpq_class& v) const {
    if (char_ != 0) fail(ErrorCode::BaseMismatch, "rational constant in positive characteristic");
    if (is_leaf()) return Elem(shared_from_this(), Scalar::rational(v));
    std::vector<Elem> c = {base_->from_rational(v)};
    return Elem(shared_from_this(), std::move(c));
}

Elem Ring::generator() const {
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "leaf field has no generator");
    if (degree_ == 1) return Elem(shared_from_this(), std::vector<Elem>{-defining_.c[0]});
    std::vector<Elem> c = {base_->zero(), base_->one()};
    return Elem(shared_from_this(), std::move(c));
}

Elem Ring::embed_base(const Elem& x) const {
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "leaf field has no base");
    std::vector<Elem> c = {x};
    return Elem(shared_from_this(), std::move(c));
}

Elem Ring::lift(const Elem& x) const {
    if (same(x.ring(), shared_from_this())) return x;
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "element does not belong to this tower");
    return embed_base(base_->lift(x));
}

std::vector<Scalar> Ring::flatten(const Elem& x) const {
    if (is_leaf()) return {x.leaf()};
    std::vector<Scalar> out;
    out.reserve(std::size_t(total_degree_));
    for (const Elem& c : x.coords()) {
        std::vector<Scalar> part = base_->flatten(c);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Elem Ring::unflatten(const std::vector<Scalar>& v) const {
    if (int(v.size()) != total_degree_) fail(ErrorCode::BaseMismatch, "flat coordinate count mismatch");
    if (is_leaf()) return Elem(shared_from_this(), v[0]);
    const int db = base_->total_degree();
    std::vector<Elem> coords;
    coords.reserve(std::size_t(degree_));
    for (int j = 0; j < degree_; ++j) {
        std::vector<Scalar> part(v.begin() + std::ptrdiff_t(j) * db, v.begin() + std::ptrdiff_t(j + 1) * db);
        coords.push_back(base_->unflatten(part));
    }
    return Elem(shared_from_this(), std::move(coords));
}

Elem Ring::basis_monomial(int leaf_index) const {
    std::vector<Scalar> flat(std::size_t(total_degree_),
                             char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0));
    flat[std::size_t(leaf_index)] = char_ == 0 ? Scalar::rational(1) : Scalar::finite(char_, 1);
    return unflatten(flat);
}

bool Ring::in_base(const Elem& x) const {
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "leaf field has no base");
    for (std::size_t i = 1; i < x.coords().size(); ++i)
        if (!x.coords()[i].is_zero()) return false;
    return true;
}

Elem Ring::to_base(const Elem& x) const {
    if (!in_base(x)) fail(ErrorCode::NotRational, "element does not descend to the base: " + x.str());
    return x.coords()[0];
}

bool Ring::in_leaf(const Elem& x) const {
    if (is_leaf()) return true;
    return in_base(x) && base_->in_leaf(x.coords()[0]);
}

Scalar Ring::to_leaf_scalar(const Elem& x) const {
    if (is_leaf()) return x.leaf();
    return base_->to_leaf_scalar(to_base(x));
}

Elem Ring::descend_to(const RingPtr& ancestor, const Elem& x) const {
    if (same(shared_from_this(), ancestor)) return x;
    if (is_leaf()) fail(ErrorCode::NotRational, "target ring is not an ancestor");
    return base_->descend_to(ancestor, to_base(x));
}

Poly Ring::char_poly(const Elem& x) const {
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "char_poly needs an extension element");
    const int d = degree_;
    // multiplication matrix over the immediate base: column j = coords of x * gen^j
    std::vector<std::vector<Elem>> M(std::size_t(d), std::vector<Elem>(std::size_t(d), base_->zero()));
    Elem y = x;
    Elem gen = generator();
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) M[std::size_t(i)][std::size_t(j)] = y.coords()[std::size_t(i)];
        if (j + 1 < d) y = y * gen;
    }
    std::vector<Elem> desc = berkowitz(M, base_);
    std::vector<Elem> asc(desc.rbegin(), desc.rend());
    return Poly(base_, std::move(asc));
}

Elem Ring::norm(const Elem& x) const {
    Poly cp = char_poly(x);
    Elem c0 = cp.degree() >= 0 ? cp.c[0] : base_->zero();
    return (degree_ % 2 == 0) ? c0 : -c0;
}

Elem Ring::trace(const Elem& x) const {
    Poly cp = char_poly(x);
    return -cp.c[std::size_t(degree_ - 1)];
}

Elem Ring::char_poly_e2(const Elem& x) const {
    if (degree_ < 2) fail(ErrorCode::BaseMismatch, "e2 needs extension degree >= 2");
    Poly cp = char_poly(x);
    return cp.c[std::size_t(degree_ - 2)];
}

Elem Ring::norm_rel(const Elem& x, const RingPtr& down_to) const {
    if (same(shared_from_this(), down_to)) return x;
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "norm target is not an ancestor");
    return base_->norm_rel(norm(x), down_to);
}

Elem Ring::trace_rel(const Elem& x, const RingPtr& down_to) const {
    if (same(shared_from_this(), down_to)) return x;
    if (is_leaf()) fail(ErrorCode::BaseMismatch, "trace target is not an ancestor");
    return base_->trace_rel(trace(x), down_to);
}

Elem Elem::inverse() const {
    if (is_leaf()) return Elem(ring_, leaf_.inverse());
    const Ring& R = *ring_;
    const int D = R.total_degree();
    Scalar z = R.characteristic() == 0 ? Scalar::rational(0) : Scalar::finite(R.characteristic(), 0);
    // leaf-linear multiplication operator; x is a unit iff it is invertible
    std::vector<std::vector<Scalar>> M(std::size_t(D), std::vector<Scalar>(std::size_t(D), z));
    for (int j = 0; j < D; ++j) {
        std::vector<Scalar> col = R.flatten(*this * R.basis_monomial(j));
        for (int i = 0; i < D; ++i) M[std::size_t(i)][std::size_t(j)] = col[std::size_t(i)];
    }
    std::vector<Scalar> e1 = R.flatten(R.one());
    auto sol = solve_linear(std::move(M), std::move(e1));
    if (!sol) fail(ErrorCode::NonUnit, "element is not a unit: " + str());
    return R.unflatten(*sol);
}

// ---------------------------------------------------------------------------
// Automorphism machinery
// ---------------------------------------------------------------------------

namespace {

// Chain of rings from the top ring down to (excluding) the leaf.
std::vector<const Ring*> tower_chain(const Ring* top) {
    std::vector<const Ring*> chain;
    const Ring* r = top;
    while (!r->is_leaf()) {
        chain.push_back(r);
        r = r->base().get();
    }
    return chain;
}

// Apply a level-image list to an element of the level-`level` ring, producing
// an element of the top ring.
Elem apply_images(const RingPtr& top, const std::vector<const Ring*>& chain,
                  const std::vector<Elem>& images, std::size_t level, const Elem& x) {
    if (level >= chain.size()) {
        // x lives in the leaf field
        return top->lift(x);
    }
    Elem acc = top->zero();
    Elem p = top->one();
    const auto& coords = x.coords();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        Elem ci = apply_images(top, chain, images, level + 1, coords[i]);
        acc = acc + ci * p;
        if (i + 1 < coords.size()) p = p * images[level];
    }
    return acc;
}

} // namespace

void Ring::install_automorphisms(std::vector<std::vector<Elem>> level_image_sets, bool close_set) {
    const RingPtr self = shared_from_this();
    const auto chain = tower_chain(this);
    const std::size_t levels = chain.size();
    const int D = total_degree_;

    auto build_matrix = [&](const std::vector<Elem>& images) {
        std::vector<Scalar> m(std::size_t(D) * std::size_t(D),
                              char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0));
        for (int j = 0; j < D; ++j) {
            Elem img = apply_images(self, chain, images, 0, basis_monomial(j));
            std::vector<Scalar> col = flatten(img);
            for (int i = 0; i < D; ++i) m[std::size_t(i) * std::size_t(D) + std::size_t(j)] = col[std::size_t(i)];
        }
        return m;
    };

    auto validate_roots = [&](const std::vector<Elem>& images, std::size_t aut_idx) {
        for (std::size_t j = 0; j < levels; ++j) {
            const Poly& h = chain[j]->defining();
            // evaluate h with phi-mapped coefficients at images[j]
            Elem acc = zero();
            Elem p = one();
            for (int i = 0; i <= h.degree(); ++i) {
                Elem ci = apply_images(self, chain, images, j + 1, h.c[std::size_t(i)]);
                acc = acc + ci * p;
                if (i < h.degree()) p = p * images[j];
            }
            if (!acc.is_zero())
                fail(ErrorCode::NotARoot,
                     "automorphism image " + std::to_string(aut_idx) + " at tower level " + std::to_string(j) +
                         " is not a root of the defining polynomial");
        }
    };

    // identity images
    std::vector<Elem> id_images;
    for (std::size_t j = 0; j < levels; ++j) id_images.push_back(lift(chain[j]->generator()));

    struct Cand {
        std::vector<Elem> images;
        std::vector<Scalar> matrix;
    };
    std::vector<Cand> set;
    auto matrix_eq = [](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    };
    auto contains = [&](const std::vector<Scalar>& m) {
        for (const auto& c : set)
            if (matrix_eq(c.matrix, m)) return true;
        return false;
    };

    set.push_back({id_images, build_matrix(id_images)});
    std::size_t idx = 0;
    for (auto& imgs : level_image_sets) {
        if (imgs.size() != levels) fail(ErrorCode::MalformedInput, "level image count mismatch");
        validate_roots(imgs, idx++);
        std::vector<Scalar> m = build_matrix(imgs);
        {
            Scalar z = char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0);
            std::vector<std::vector<Scalar>> sq(std::size_t(D), std::vector<Scalar>(std::size_t(D), z));
            for (int i = 0; i < D; ++i)
                for (int j = 0; j < D; ++j) sq[std::size_t(i)][std::size_t(j)] = m[std::size_t(i) * std::size_t(D) + std::size_t(j)];
            if (!matrix_invertible(sq))
                fail(ErrorCode::NotClosedUnderComposition, "generator image map is not invertible");
        }
        if (!contains(m)) set.push_back({std::move(imgs), std::move(m)});
    }

    auto mat_mul = [&](const std::vector<Scalar>& A, const std::vector<Scalar>& B) {
        std::vector<Scalar> C(std::size_t(D) * std::size_t(D),
                              char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0));
        for (int i = 0; i < D; ++i)
            for (int k = 0; k < D; ++k) {
                const Scalar& a = A[std::size_t(i) * std::size_t(D) + std::size_t(k)];
                if (a.is_zero()) continue;
                for (int j = 0; j < D; ++j)
                    C[std::size_t(i) * std::size_t(D) + std::size_t(j)] =
                        C[std::size_t(i) * std::size_t(D) + std::size_t(j)] + a * B[std::size_t(k) * std::size_t(D) + std::size_t(j)];
            }
        return C;
    };
    auto images_from_matrix = [&](const std::vector<Scalar>& m) {
        std::vector<Elem> imgs;
        for (std::size_t j = 0; j < levels; ++j) {
            std::vector<Scalar> g = flatten(lift(chain[j]->generator()));
            std::vector<Scalar> out(std::size_t(D), char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0));
            for (int i = 0; i < D; ++i)
                for (int k = 0; k < D; ++k)
                    out[std::size_t(i)] = out[std::size_t(i)] + m[std::size_t(i) * std::size_t(D) + std::size_t(k)] * g[std::size_t(k)];
            imgs.push_back(unflatten(out));
        }
        return imgs;
    };

    // close under composition (finite cap; valid groups here are tiny)
    const std::size_t kMaxAuts = 256;
    if (close_set) {
        bool grew = true;
        while (grew) {
            grew = false;
            const std::size_t n = set.size();
            for (std::size_t i = 0; i < n && set.size() <= kMaxAuts; ++i)
                for (std::size_t j = 0; j < n && set.size() <= kMaxAuts; ++j) {
                    std::vector<Scalar> m = mat_mul(set[i].matrix, set[j].matrix);
                    if (!contains(m)) {
                        set.push_back({images_from_matrix(m), std::move(m)});
                        grew = true;
                    }
                }
            if (set.size() > kMaxAuts)
                fail(ErrorCode::NotClosedUnderComposition, "automorphism set does not close into a small group");
        }
    }

    // canonical order: identity first, then lexicographic by matrix entries
    std::vector<Scalar> idm = set[0].matrix;
    std::sort(set.begin(), set.end(), [&](const Cand& a, const Cand& b) {
        if (matrix_eq(a.matrix, idm) != matrix_eq(b.matrix, idm)) return matrix_eq(a.matrix, idm);
        for (std::size_t i = 0; i < a.matrix.size(); ++i) {
            int c = a.matrix[i].compare(b.matrix[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });

    const int n = int(set.size());
    comp_table_.assign(std::size_t(n), std::vector<int>(std::size_t(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> m = mat_mul(set[std::size_t(i)].matrix, set[std::size_t(j)].matrix);
            for (int k = 0; k < n; ++k)
                if (matrix_eq(set[std::size_t(k)].matrix, m)) {
                    comp_table_[std::size_t(i)][std::size_t(j)] = k;
                    break;
                }
            if (comp_table_[std::size_t(i)][std::size_t(j)] < 0)
                fail(ErrorCode::NotClosedUnderComposition, "automorphism list is not closed under composition");
        }
    inverse_table_.assign(std::size_t(n), -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (comp_table_[std::size_t(i)][std::size_t(j)] == 0) {
                inverse_table_[std::size_t(i)] = j;
                break;
            }
        if (inverse_table_[std::size_t(i)] < 0)
            fail(ErrorCode::NotClosedUnderComposition, "automorphism has no inverse in the list");
    }

    aut_matrices_.clear();
    for (auto& c : set) {
        AutData ad;
        for (const Elem& img : c.images) ad.level_images.push_back(flatten(img));
        ad.matrix = std::move(c.matrix);
        aut_matrices_.push_back(std::move(ad));
    }
}

Aut Ring::aut(int i) const {
    if (i < 0 || i >= aut_count()) fail(ErrorCode::MalformedInput, "automorphism index out of range");
    return Aut(this, i);
}

std::optional<Aut> Ring::unique_aut_of_order(int n) const {
    std::optional<Aut> found;
    for (int i = 0; i < aut_count(); ++i) {
        Aut a = aut(i);
        if (a.order() == n) {
            if (found) return std::nullopt;
            found = a;
        }
    }
    return found;
}

Elem Ring::apply_aut(int idx, const Elem& x) const {
    const AutData& ad = aut_matrices_[std::size_t(idx)];
    if (is_leaf()) return x;
    const int D = total_degree_;
    std::vector<Scalar> v = flatten(x);
    std::vector<Scalar> out(std::size_t(D), char_ == 0 ? Scalar::rational(0) : Scalar::finite(char_, 0));
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            const Scalar& m = ad.matrix[std::size_t(i) * std::size_t(D) + std::size_t(j)];
            if (!m.is_zero()) out[std::size_t(i)] = out[std::size_t(i)] + m * v[std::size_t(j)];
        }
    return unflatten(out);
}

Elem Ring::aut_level_image(int idx, int j) const {
    return unflatten(aut_matrices_[std::size_t(idx)].level_images[std::size_t(j)]);
}

Elem Aut::apply(const Elem& x) const { return ring_->apply_aut(idx_, ring_->lift(x)); }

Aut Aut::compose(const Aut& inner) const {
    if (ring_ != inner.ring_) fail(ErrorCode::BaseMismatch, "composing automorphisms of different rings");
    return Aut(ring_, ring_->comp_table_[std::size_t(idx_)][std::size_t(inner.idx_)]);
}

Aut Aut::inverse() const { return Aut(ring_, ring_->inverse_table_[std::size_t(idx_)]); }

int Aut::order() const {
    int n = 1;
    int cur = idx_;
    while (cur != 0) {
        cur = ring_->comp_table_[std::size_t(cur)][std::size_t(idx_)];
        ++n;
    }
    return n;
}

Elem Aut::level_image(int j) const { return ring_->aut_level_image(idx_, j); }

// ---------------------------------------------------------------------------
// Squarefreeness and factories
// ---------------------------------------------------------------------------

namespace {

// 18*a0*a1*a2*a3 - 4*a1^3*a3 + a1^2*a2^2 - 4*a0*a2^3 - 27*a0^2*a3^2 and
// a1^2 - 4*a0*a2: the universal integer-coefficient discriminants.
Elem universal_disc(const std::vector<Elem>& a, const RingPtr& R) {
    if (a.size() == 3) {
        return a[1] * a[1] - R->from_int(4) * a[0] * a[2];
    }
    const Elem &a0 = a[0], &a1 = a[1], &a2 = a[2], &a3 = a[3];
    return R->from_int(18) * a0 * a1 * a2 * a3 - R->from_int(4) * a1 * a1 * a1 * a3 +
           a1 * a1 * a2 * a2 - R->from_int(4) * a0 * a2 * a2 * a2 - R->from_int(27) * a0 * a0 * a3 * a3;
}

void check_squarefree(const RingPtr& base, const Poly& f) {
    if (f.degree() < 1) fail(ErrorCode::NotSquarefree, "defining polynomial must be non-constant");
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        // perfect coefficient fields only: vanishing derivative means a p-th power
        fail(ErrorCode::NotSquarefree, "derivative vanishes (p-th power)");
    }
    try {
        Poly g = poly_gcd(f, fp);
        if (g.degree() > 0) fail(ErrorCode::NotSquarefree, "gcd with derivative is not constant");
        return;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NonUnit) throw;
        // non-field etale base: fall back to the universal discriminant
    }
    if (f.degree() == 1) return;
    if (f.degree() > 3)
        fail(ErrorCode::UnsupportedDegree, "squarefree test over a non-field base needs degree <= 3");
    std::vector<Elem> a(f.c.rbegin(), f.c.rend()); // descending: a0 = leading
    Elem d = universal_disc(a, base);
    if (!d.is_unit()) fail(ErrorCode::NotSquarefree, "discriminant is not a unit over the base");
}

// irreducibility of monic f over a finite *field* ring via the standard
// x^{q^d} = x test plus proper-divisor gcd checks
bool irreducible_over_finite_field(const RingPtr& K, const Poly& f) {
    const int d = f.degree();
    if (d == 1) return true;
    mpz_class q = K->is_leaf() ? mpz_class(K->characteristic()) : K->field_size();
    Poly x(K, {K->zero(), K->one()});
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
    Poly xqd = x.powmod(qd, f);
    if (!(xqd == x.divmod(f).second)) return false;
    for (int ell = 2; ell <= d; ++ell) {
        if (d % ell != 0) continue;
        bool prime = true;
        for (int t = 2; t * t <= ell; ++t)
            if (ell % t == 0) prime = false;
        if (!prime) continue;
        mpz_class qe;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d / ell));
        Poly xe = x.powmod(qe, f);
        Poly g = poly_gcd((xe - x).divmod(f).second, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

} // namespace

void Ring::compute_field_status() {
    if (is_leaf()) {
        field_status_ = FieldStatus::Field;
        return;
    }
    if (degree_ == 1) {
        field_status_ = base_->field_status();
        return;
    }
    if (base_->field_status() == FieldStatus::Product) {
        field_status_ = FieldStatus::Product;
        return;
    }
    if (char_ > 0) {
        if (base_->field_status() == FieldStatus::Field) {
            field_status_ = irreducible_over_finite_field(base_, defining_) ? FieldStatus::Field
                                                                            : FieldStatus::Product;
        } else {
            field_status_ = FieldStatus::Unknown;
        }
        return;
    }
    // characteristic zero
    if (base_->is_leaf()) {
        std::vector<mpq_class> roots;
        try {
            roots = rational_roots(defining_);
        } catch (const Error&) {
            field_status_ = FieldStatus::Unknown;
            return;
        }
        if (!roots.empty())
            field_status_ = FieldStatus::Product;
        else if (defining_.degree() <= 3)
            field_status_ = FieldStatus::Field;
        else
            field_status_ = FieldStatus::Unknown;
        return;
    }
    field_status_ = FieldStatus::Unknown;
}

RingPtr Ring::make_extension(RingPtr base, const Poly& defining, const std::vector<Poly>& gen_images) {
    std::vector<std::vector<Elem>> level_sets;
    if (!defining.is_monic()) fail(ErrorCode::MalformedInput, "defining polynomial must be monic");
    auto raw = make_raw(base, defining);
    RingPtr self = raw;
    const auto chain = tower_chain(raw.get());
    for (const Poly& img : gen_images) {
        if (img.degree() >= defining.degree())
            fail(ErrorCode::MalformedInput, "generator image degree must be below the extension degree");
        std::vector<Elem> images;
        std::vector<Elem> coords(img.c);
        images.push_back(Elem(self, std::move(coords)));
        for (std::size_t j = 1; j < chain.size(); ++j) images.push_back(raw->lift(chain[j]->generator()));
        level_sets.push_back(std::move(images));
    }
    check_squarefree(base, defining);
    raw->install_automorphisms(std::move(level_sets), /*close_set=*/true);
    raw->compute_field_status();
    return raw;
}

RingPtr Ring::make_extension_general(RingPtr base, const Poly& defining,
                                     const std::vector<std::vector<Elem>>& level_images) {
    if (!defining.is_monic()) fail(ErrorCode::MalformedInput, "defining polynomial must be monic");
    auto raw = make_raw(base, defining);
    check_squarefree(base, defining);
    std::vector<std::vector<Elem>> sets = level_images;
    // re-home the images in the new ring instance (values only)
    raw->install_automorphisms(std::move(sets), /*close_set=*/true);
    raw->compute_field_status();
    return raw;
}

RingPtr Ring::frobenius_extension(RingPtr base, const Poly& defining) {
    if (base->characteristic() == 0) fail(ErrorCode::BaseMismatch, "Frobenius needs positive characteristic");
    mpz_class q;
    if (base->is_leaf())
        q = base->characteristic();
    else
        q = base->field_size();
    Poly x(base, {base->zero(), base->one()});
    Poly img = x.powmod(q, defining);
    return make_extension(std::move(base), defining, {img});
}

RingPtr Ring::finite_field(std::int64_t p, int degree) {
    RingPtr fp = prime_field(p);
    if (degree == 1) return fp;
    // deterministically smallest monic irreducible: ascending mixed-radix scan
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(degree));
    for (mpz_class code = 0; code < total; ++code) {
        std::vector<Elem> c;
        mpz_class rest = code;
        for (int i = 0; i < degree; ++i) {
            mpz_class digit = rest % p;
            c.push_back(fp->from_int(digit.get_si()));
            rest /= p;
        }
        c.push_back(fp->one());
        Poly f(fp, std::move(c));
        if (irreducible_over_finite_field(fp, f)) return frobenius_extension(fp, f);
    }
    fail(ErrorCode::InternalCheckFailed, "no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// is_square
// ---------------------------------------------------------------------------

bool Ring::is_square(const Elem& x) const {
    if (x.is_zero()) fail(ErrorCode::ZeroInput, "is_square needs a nonzero element");
    if (is_leaf()) {
        if (char_ == 0) {
            const mpq_class& q = x.leaf().rat();
            if (q < 0) return false;
            return squarefree_core(q) == 1;
        }
        if (char_ == 2) return true;
        // Euler criterion
        Elem e = x.pow(mpz_class((char_ - 1) / 2));
        return e.is_one();
    }
    if (!is_finite_field())
        fail(ErrorCode::UnsupportedField, "is_square supports Q, prime fields, and finite fields");
    if (char_ == 2) return true;
    mpz_class e = (field_size() - 1) / 2;
    Elem r = x.pow(e);
    if (r.is_one()) return true;
    if ((-r).is_one()) return false;
    fail(ErrorCode::InternalCheckFailed, "Euler criterion did not yield a sign (ring is not a field?)");
}

// ---------------------------------------------------------------------------
// random sampling
// ---------------------------------------------------------------------------

Elem Ring::random_element(std::mt19937_64& rng, long height) const {
    const int D = total_degree_;
    std::vector<Scalar> flat;
    flat.reserve(std::size_t(D));
    for (int i = 0; i < D; ++i) {
        if (char_ == 0) {
            std::uniform_int_distribution<long> num(-height, height);
            std::uniform_int_distribution<long> den(1, 2);
            flat.push_back(Scalar::rational(num(rng), den(rng)));
        } else {
            std::uniform_int_distribution<std::int64_t> v(0, char_ - 1);
            flat.push_back(Scalar::finite(char_, v(rng)));
        }
    }
    return unflatten(flat);
}

Elem Ring::random_unit(std::mt19937_64& rng, long height) const {
    for (int tries = 0; tries < 1000; ++tries) {
        Elem x = random_element(rng, height);
        if (x.is_unit()) return x;
    }
    fail(ErrorCode::InternalCheckFailed, "failed to sample a unit");
}

// ---------------------------------------------------------------------------
// tensor products
// ---------------------------------------------------------------------------

Elem Tensor::embed_left(const Elem& x) const {
    if (Ring::same(product, left)) return x;
    // left = k[s]/(f) over the common base; map s -> product generator
    Elem acc = product->zero();
    Elem p = product->one();
    const auto& coords = x.coords();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        acc = acc + product->lift(coords[i]) * p;
        if (i + 1 < coords.size()) p = p * product->generator();
    }
    return acc;
}

Elem Tensor::embed_right(const Elem& x) const {
    if (Ring::same(product, right)) return x;
    return product->embed_base(x);
}

Elem Tensor::project_left(const Elem& x) const {
    if (Ring::same(product, left)) return x;
    const RingPtr common = left->base();
    std::vector<Elem> coords;
    for (const Elem& c : x.coords()) coords.push_back(right->descend_to(common, c));
    while (int(coords.size()) < left->degree()) coords.push_back(common->zero());
    return Elem(left, std::move(coords));
}

Elem Tensor::project_right(const Elem& x) const {
    if (Ring::same(product, right)) return x;
    return product->to_base(x);
}

Aut Tensor::lifted_left(const Aut& a) const { return product->aut(left_aut_index[std::size_t(a.index())]); }

Aut Tensor::lifted_right(const Aut& a) const { return product->aut(right_aut_index[std::size_t(a.index())]); }

Tensor tensor_extend(const RingPtr& A, const RingPtr& B) {
    // degenerate: tensoring with the common base itself
    if (Ring::same(B, A->base()) || (A->is_leaf() && Ring::same(A, B))) {
        Tensor t;
        t.product = A;
        t.left = A;
        t.right = B;
        t.status = A->field_status();
        t.left_aut_index.resize(std::size_t(A->aut_count()));
        for (int i = 0; i < A->aut_count(); ++i) t.left_aut_index[std::size_t(i)] = i;
        t.right_aut_index.assign(std::size_t(B->aut_count()), 0);
        return t;
    }
    if (Ring::same(A, B->base())) {
        Tensor t;
        t.product = B;
        t.left = A;
        t.right = B;
        t.status = B->field_status();
        t.left_aut_index.assign(std::size_t(A->aut_count()), 0);
        t.right_aut_index.resize(std::size_t(B->aut_count()));
        for (int i = 0; i < B->aut_count(); ++i) t.right_aut_index[std::size_t(i)] = i;
        return t;
    }
    if (A->is_leaf() || B->is_leaf() || !Ring::same(A->base(), B->base()))
        fail(ErrorCode::BaseMismatch, "tensor factors must extend the same base");

    const RingPtr k = A->base();
    // lift f_A coefficients (in k) into B
    std::vector<Elem> fc;
    for (const Elem& c : A->defining().c) fc.push_back(B->lift(c));
    Poly fA(B, std::move(fc));

    auto raw = Ring::make_raw(B, fA);
    RingPtr C = raw;
    check_squarefree(B, fA);

    const int hB = B->tower_height();
    std::vector<std::vector<Elem>> sets;
    // A's automorphisms: generator image re-expressed, B's levels fixed
    const auto chainC = tower_chain(raw.get());
    for (int i = 0; i < A->aut_count(); ++i) {
        Elem imgA = A->aut(i).level_image(0); // in A, coords over k
        Elem acc = C->zero();
        Elem p = C->one();
        const auto& coords = imgA.coords();
        for (std::size_t t = 0; t < coords.size(); ++t) {
            acc = acc + C->lift(coords[t]) * p;
            if (t + 1 < coords.size()) p = p * C->generator();
        }
        std::vector<Elem> images = {acc};
        for (std::size_t j = 1; j < chainC.size(); ++j) images.push_back(C->lift(chainC[j]->generator()));
        sets.push_back(std::move(images));
    }
    // B's automorphisms: C's generator fixed, B's level images embedded
    for (int i = 0; i < B->aut_count(); ++i) {
        std::vector<Elem> images = {C->generator()};
        for (int j = 0; j < hB; ++j) images.push_back(C->lift(B->aut(i).level_image(j))); // element of B
        sets.push_back(std::move(images));
    }

    raw->install_automorphisms(std::move(sets), /*close_set=*/true);
    raw->compute_field_status();

    Tensor t;
    t.product = C;
    t.left = A;
    t.right = B;

    // locate the lifted automorphisms in the closed table
    auto find_index = [&](const Elem& gen_img, int right_idx) {
        for (int i = 0; i < C->aut_count(); ++i) {
            Aut a = C->aut(i);
            if (!(a.level_image(0) == gen_img)) continue;
            bool ok = true;
            for (int j = 0; j < hB; ++j) {
                Elem want = C->lift(B->aut(right_idx).level_image(j));
                if (!(a.level_image(1 + j) == want)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return i;
        }
        fail(ErrorCode::InternalCheckFailed, "lifted automorphism missing from closure");
    };
    for (int i = 0; i < A->aut_count(); ++i) {
        Elem imgA = A->aut(i).level_image(0);
        Elem acc = C->zero();
        Elem p = C->one();
        const auto& coords = imgA.coords();
        for (std::size_t s = 0; s < coords.size(); ++s) {
            acc = acc + C->lift(coords[s]) * p;
            if (s + 1 < coords.size()) p = p * C->generator();
        }
        t.left_aut_index.push_back(find_index(acc, 0));
    }
    for (int i = 0; i < B->aut_count(); ++i) t.right_aut_index.push_back(find_index(C->generator(), i));

    // field status
    if (A->field_status() == Ring::FieldStatus::Product || B->field_status() == Ring::FieldStatus::Product)
        t.status = Ring::FieldStatus::Product;
    else if (C->field_status() != Ring::FieldStatus::Unknown)
        t.status = C->field_status();
    else if (A->field_status() == Ring::FieldStatus::Field && B->field_status() == Ring::FieldStatus::Field &&
             std::gcd(A->total_degree(), B->total_degree()) == 1)
        t.status = Ring::FieldStatus::Field;
    else
        t.status = Ring::FieldStatus::Unknown;
    return t;
}

// ---------------------------------------------------------------------------
// rational helpers
// ---------------------------------------------------------------------------

std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n, long bound) {
    if (n < 0) n = -n;
    if (n == 0) fail(ErrorCode::ZeroInput, "factoring zero");
    std::vector<std::pair<mpz_class, int>> out;
    auto push = [&](const mpz_class& p, int e) {
        for (auto& [q, f] : out)
            if (q == p) {
                f += e;
                return;
            }
        out.emplace_back(p, e);
    };
    for (mpz_class p = 2; p * p <= n && p <= bound; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) push(p, e);
    }
    int mult = 1;
    while (n > 1) {
        if (n <= mpz_class(bound) * bound) {
            push(n, mult); // no factor <= bound, so prime
            break;
        }
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            n = r;
            mult *= 2;
            continue;
        }
        fail(ErrorCode::TrialDivisionExceeded,
             "cofactor " + n.get_str() + " exceeds the trial-division bound");
    }
    return out;
}

mpz_class squarefree_core(const mpq_class& x, long bound) {
    if (x == 0) fail(ErrorCode::ZeroInput, "squarefree core of zero");
    mpz_class n = x.get_num() * x.get_den();
    int sign = n < 0 ? -1 : 1;
    mpz_class core = sign;
    for (const auto& [p, e] : factor_integer(n, bound))
        if (e % 2 == 1) core *= p;
    return core;
}

std::vector<mpq_class> rational_roots(const Poly& f, long bound) {
    if (f.ring->characteristic() != 0 || !f.ring->is_leaf())
        fail(ErrorCode::UnsupportedField, "rational_roots needs coefficients in Q");
    if (f.degree() < 1) return {};
    // clear denominators to a primitive integer polynomial
    mpz_class lcm = 1;
    for (const Elem& c : f.c) {
        mpz_class den = c.leaf().rat().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    std::vector<mpz_class> a;
    for (const Elem& c : f.c) {
        mpq_class v = c.leaf().rat() * lcm;
        a.push_back(v.get_num());
    }
    std::vector<mpq_class> roots;
    // zero roots
    std::size_t low = 0;
    while (low < a.size() && a[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low >= a.size() - 1) return roots;
    std::vector<mpz_class> b(a.begin() + std::ptrdiff_t(low), a.end());
    auto divisors = [&](const mpz_class& n) {
        std::vector<mpz_class> divs = {1};
        for (const auto& [p, e] : factor_integer(n, bound)) {
            std::size_t sz = divs.size();
            mpz_class pk = 1;
            for (int i = 0; i < e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
            }
        }
        return divs;
    };
    std::vector<mpz_class> ps = divisors(b.front());
    std::vector<mpz_class> qs = divisors(b.back());
    auto eval = [&](const mpq_class& r) {
        mpq_class acc = 0;
        for (std::size_t i = b.size(); i-- > 0;) acc = acc * r + mpq_class(b[i]);
        return acc;
    };
    for (const mpz_class& p : ps)
        for (const mpz_class& q : qs)
            for (int s : {1, -1}) {
                mpq_class r(s * p, q);
                r.canonicalize();
                if (eval(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace pvs
