#include "pvs/binary_form.hpp"

#include <algorithm>
#include <sstream>

namespace pvs {

std::string galois_type_name(GaloisType t) {
    switch (t) {
        case GaloisType::Trivial: return "trivial";
        case GaloisType::Quadratic: return "quadratic";
        case GaloisType::CyclicCubic: return "cyclic-cubic";
        case GaloisType::S3: return "s3";
        case GaloisType::ReducibleComposite: return "reducible-composite";
    }
    return "?";
}

ErLabel ErLabel::trivial(bool finite) {
    ErLabel l;
    l.finite_field = finite;
    return l;
}

ErLabel ErLabel::finite_of_degree(int d) {
    ErLabel l;
    l.finite_field = true;
    l.splitting_degree = d;
    l.type = d == 1 ? GaloisType::Trivial : (d == 2 ? GaloisType::Quadratic : GaloisType::CyclicCubic);
    return l;
}

ErLabel ErLabel::rational_quadratic(const mpz_class& core) {
    ErLabel l;
    l.splitting_degree = 2;
    l.type = GaloisType::Quadratic;
    l.cores = {core};
    return l;
}

bool ErLabel::operator==(const ErLabel& o) const {
    return splitting_degree == o.splitting_degree && type == o.type && finite_field == o.finite_field &&
           cores == o.cores && defining == o.defining;
}

std::string ErLabel::str() const {
    std::ostringstream os;
    os << galois_type_name(type);
    if (!finite_field && !cores.empty()) {
        os << "(";
        for (std::size_t i = 0; i < cores.size(); ++i) {
            if (i) os << ",";
            os << cores[i].get_str();
        }
        if (!defining.empty()) {
            os << ";";
            for (std::size_t i = 0; i < defining.size(); ++i) {
                if (i) os << ",";
                os << defining[i].get_str();
            }
        }
        os << ")";
    }
    return os.str();
}

BinaryForm::BinaryForm(RingPtr r, int degree, std::vector<Elem> coeffs)
    : ring(std::move(r)), deg(degree), c(std::move(coeffs)) {
    if (int(c.size()) != deg + 1) fail(ErrorCode::MalformedInput, "binary form needs degree+1 coefficients");
}

BinaryForm BinaryForm::from_ints(RingPtr r, const std::vector<long>& coeffs) {
    std::vector<Elem> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(r->from_int(v));
    return BinaryForm(std::move(r), int(coeffs.size()) - 1, std::move(c));
}

Elem BinaryForm::eval(const Elem& v1, const Elem& v2) const {
    Elem acc = ring->zero();
    for (int i = 0; i <= deg; ++i) {
        Elem term = c[std::size_t(i)];
        for (int k = 0; k < deg - i; ++k) term = term * v1;
        for (int k = 0; k < i; ++k) term = term * v2;
        acc = acc + term;
    }
    return acc;
}

bool BinaryForm::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Elem& x) { return x.is_zero(); });
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
    if (deg != o.deg) fail(ErrorCode::MalformedInput, "adding forms of different degrees");
    std::vector<Elem> r(c);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c[i];
    return BinaryForm(ring, deg, std::move(r));
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    std::vector<Elem> r(std::size_t(deg + o.deg + 1), ring->zero());
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; j <= o.deg; ++j) r[std::size_t(i + j)] = r[std::size_t(i + j)] + c[std::size_t(i)] * o.c[std::size_t(j)];
    return BinaryForm(ring, deg + o.deg, std::move(r));
}

BinaryForm BinaryForm::scaled(const Elem& s) const {
    std::vector<Elem> r(c);
    for (auto& x : r) x = x * s;
    return BinaryForm(ring, deg, std::move(r));
}

bool BinaryForm::operator==(const BinaryForm& o) const {
    if (deg != o.deg) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!(c[i] == o.c[i])) return false;
    return true;
}

std::string BinaryForm::str() const {
    std::ostringstream os;
    os << "deg" << deg << "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ", ";
        os << c[i].str();
    }
    os << "]";
    return os.str();
}

Elem binary_form_disc(const BinaryForm& F) {
    const RingPtr& R = F.ring;
    if (F.deg == 2) {
        return F.c[1] * F.c[1] - R->from_int(4) * F.c[0] * F.c[2];
    }
    if (F.deg == 3) {
        const Elem &a0 = F.c[0], &a1 = F.c[1], &a2 = F.c[2], &a3 = F.c[3];
        return R->from_int(18) * a0 * a1 * a2 * a3 - R->from_int(4) * a1 * a1 * a1 * a3 +
               a1 * a1 * a2 * a2 - R->from_int(4) * a0 * a2 * a2 * a2 -
               R->from_int(27) * a0 * a0 * a3 * a3;
    }
    fail(ErrorCode::UnsupportedDegree, "discriminant supports degrees 2 and 3");
}

BinaryForm substitute(const BinaryForm& F, const Mat& A) {
    if (A.rows != 2 || A.cols != 2) fail(ErrorCode::MalformedInput, "substitution needs a 2x2 matrix");
    const RingPtr& R = F.ring;
    // v A = (a11 v1 + a21 v2, a12 v1 + a22 v2) as two linear forms
    BinaryForm L1(R, 1, {R->lift(A.at(0, 0)), R->lift(A.at(1, 0))});
    BinaryForm L2(R, 1, {R->lift(A.at(0, 1)), R->lift(A.at(1, 1))});
    BinaryForm acc(R, F.deg, std::vector<Elem>(std::size_t(F.deg + 1), R->zero()));
    BinaryForm p2(R, 0, {R->one()});
    // accumulate c_i L1^{deg-i} L2^i, scanning i downward so powers build up
    std::vector<BinaryForm> l1pow = {BinaryForm(R, 0, {R->one()})};
    for (int k = 0; k < F.deg; ++k) l1pow.push_back(l1pow.back() * L1);
    for (int i = 0; i <= F.deg; ++i) {
        BinaryForm term = l1pow[std::size_t(F.deg - i)] * p2;
        acc = acc + term.scaled(F.c[std::size_t(i)]);
        if (i < F.deg) p2 = p2 * L2;
    }
    return acc;
}

BinaryForm FormFactorization::product() const {
    if (factors.empty()) {
        return BinaryForm(unit.ring(), 0, {unit});
    }
    BinaryForm acc(unit.ring(), 0, {unit});
    for (const auto& f : factors)
        for (int k = 0; k < f.multiplicity; ++k) acc = acc * f.form;
    return acc;
}

namespace {

BinaryForm homogenize(const RingPtr& R, const Poly& g) {
    // g(t) -> form G with G(t, 1) = g(t)
    const int e = g.degree();
    std::vector<Elem> c(std::size_t(e + 1), R->zero());
    for (int k = 0; k <= e; ++k) c[std::size_t(e - k)] = g.c[std::size_t(k)];
    return BinaryForm(R, e, std::move(c));
}

std::vector<Elem> field_roots(const RingPtr& K, const Poly& g) {
    std::vector<Elem> roots;
    if (K->characteristic() == 0) {
        for (const mpq_class& r : rational_roots(g)) roots.push_back(K->from_rational(r));
        return roots;
    }
    // exhaustive search over the finite field
    mpz_class q = K->is_leaf() ? mpz_class(K->characteristic()) : K->field_size();
    if (q > 100000) fail(ErrorCode::UnsupportedField, "root enumeration field too large");
    const int D = K->total_degree();
    const std::int64_t p = K->characteristic();
    std::vector<Scalar> digits(std::size_t(D), Scalar::finite(p, 0));
    for (mpz_class i = 0; i < q; ++i) {
        mpz_class rest = i;
        for (int d = 0; d < D; ++d) {
            mpz_class dig = rest % p;
            digits[std::size_t(d)] = Scalar::finite(p, dig.get_si());
            rest /= p;
        }
        Elem x = K->unflatten(digits);
        if (g.eval(x).is_zero()) roots.push_back(x);
    }
    return roots;
}

} // namespace

FormFactorization factor_binary_form(const BinaryForm& F) {
    const RingPtr& K = F.ring;
    if (F.deg > 3) fail(ErrorCode::UnsupportedDegree, "factorization supports degree <= 3");
    if (F.is_zero()) fail(ErrorCode::ZeroInput, "factoring the zero form");
    bool ok_field = (K->is_leaf() && K->characteristic() == 0) || K->is_leaf() || K->is_finite_field();
    if (!ok_field)
        fail(ErrorCode::UnsupportedField, "factorization needs Q, a prime field, or a finite field");

    FormFactorization out;
    std::vector<FormFactor> factors;

    // multiplicity of the point at infinity (1 : 0), i.e. the v2 factor
    int m = 0;
    while (m <= F.deg && F.c[std::size_t(m)].is_zero()) ++m;
    if (m > 0) factors.push_back({BinaryForm(K, 1, {K->zero(), K->one()}), m});

    // dehomogenize the rest: g(t) with g(r) = F(r, 1)-part
    const int e = F.deg - m;
    std::vector<Elem> gc(std::size_t(e + 1), K->zero());
    for (int k = 0; k <= e; ++k) gc[std::size_t(k)] = F.c[std::size_t(F.deg - k)];
    Poly g(K, std::move(gc));

    for (const Elem& r : field_roots(K, g)) {
        Poly lin(K, {-r, K->one()});
        int mult = 0;
        while (true) {
            auto [quo, rem] = g.divmod(lin);
            if (!rem.is_zero()) break;
            g = quo;
            ++mult;
        }
        if (mult > 0) factors.push_back({BinaryForm(K, 1, {K->one(), -r}), mult});
    }

    if (g.degree() >= 1) {
        // no roots left: irreducible of degree 2 or 3
        Elem lead = g.c.back();
        Poly monic = g.scaled(lead.inverse());
        factors.push_back({homogenize(K, monic), 1});
        out.unit = lead;
    } else {
        out.unit = g.c.empty() ? K->one() : g.c[0];
    }

    std::sort(factors.begin(), factors.end(), [](const FormFactor& x, const FormFactor& y) {
        if (x.form.deg != y.form.deg) return x.form.deg < y.form.deg;
        for (int i = 0; i <= x.form.deg; ++i) {
            int c = x.form.c[std::size_t(i)].compare(y.form.c[std::size_t(i)]);
            if (c != 0) return c < 0;
        }
        return x.multiplicity < y.multiplicity;
    });
    out.factors = std::move(factors);
    return out;
}

ErLabel splitting_label(const BinaryForm& F) {
    if (F.deg != 2 && F.deg != 3) fail(ErrorCode::UnsupportedDegree, "labels support degrees 2 and 3");
    const RingPtr& K = F.ring;
    Elem disc = binary_form_disc(F);
    if (disc.is_zero()) fail(ErrorCode::DegenerateForm, "zero discriminant");

    FormFactorization fact = factor_binary_form(F);

    if (K->characteristic() > 0) {
        int l = 1;
        for (const auto& f : fact.factors) l = std::lcm(l, f.form.deg);
        return ErLabel::finite_of_degree(l);
    }

    // rationals
    std::vector<const FormFactor*> nonlinear;
    for (const auto& f : fact.factors)
        if (f.form.deg >= 2) nonlinear.push_back(&f);
    if (nonlinear.empty()) return ErLabel::trivial(false);

    const BinaryForm& h = nonlinear[0]->form;
    if (h.deg == 2) {
        mpq_class d = binary_form_disc(h).leaf().rat();
        return ErLabel::rational_quadratic(squarefree_core(d));
    }
    // irreducible cubic
    mpq_class d = K->to_leaf_scalar(disc).rat();
    ErLabel l;
    l.cores = {squarefree_core(d)};
    bool square = K->is_square(K->from_rational(d));
    l.splitting_degree = square ? 3 : 6;
    l.type = square ? GaloisType::CyclicCubic : GaloisType::S3;
    // normalized monic defining polynomial h(t, 1)/lead, ascending
    mpq_class lead = h.c[0].leaf().rat();
    for (int k = 3; k >= 0; --k) l.defining.push_back(h.c[std::size_t(k)].leaf().rat() / lead);
    return l;
}

} // namespace pvs
