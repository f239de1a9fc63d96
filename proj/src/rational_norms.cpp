#include "pvs/rational_norms.hpp"

#include <set>

namespace pvs {

namespace {

// p-adic valuation of a nonzero rational; returns the unit part through `unit`
long val_p(const mpq_class& x, const mpz_class& p, mpq_class& unit) {
    mpz_class num = x.get_num(), den = x.get_den();
    long vn = long(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
    long vd = long(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
    unit = mpq_class(num, den);
    unit.canonicalize();
    return vn - vd;
}

// Legendre symbol of a p-unit rational mod an odd prime p
int legendre_unit(const mpq_class& u, const mpz_class& p) {
    mpz_class num = u.get_num() % p, den = u.get_den() % p, inv;
    if (num < 0) num += p;
    if (den < 0) den += p;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = num * inv % p;
    mpz_class e = (p - 1) / 2, s;
    mpz_powm(s.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return s == 1 ? 1 : -1;
}

// residue of an odd rational mod 8
long mod8(const mpq_class& u) {
    mpz_class num = u.get_num() % 8, den = u.get_den() % 8, inv;
    if (num < 0) num += 8;
    if (den < 0) den += 8;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(8).get_mpz_t());
    mpz_class r = num * inv % 8;
    return r.get_si();
}

} // namespace

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const mpz_class& v) {
    if (a == 0 || b == 0) fail(ErrorCode::ZeroInput, "Hilbert symbol of zero");
    if (v == 0) return (a < 0 && b < 0) ? -1 : 1;
    if (v == 2) {
        mpq_class u, w;
        long alpha = val_p(a, 2, u);
        long beta = val_p(b, 2, w);
        long um = mod8(u), wm = mod8(w);
        long eps_u = (um % 4 == 3) ? 1 : 0;
        long eps_w = (wm % 4 == 3) ? 1 : 0;
        long om_u = (um == 3 || um == 5) ? 1 : 0;
        long om_w = (wm == 3 || wm == 5) ? 1 : 0;
        long e = eps_u * eps_w + alpha * om_w + beta * om_u;
        return (e % 2 == 0) ? 1 : -1;
    }
    mpq_class u, w;
    long alpha = val_p(a, v, u);
    long beta = val_p(b, v, w);
    int sign = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && ((v - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2 != 0 && legendre_unit(u, v) == -1) sign = -sign;
    if (alpha % 2 != 0 && legendre_unit(w, v) == -1) sign = -sign;
    return sign;
}

bool is_norm_quadratic_rational(const mpz_class& D, const mpq_class& beta, long bound) {
    if (beta == 0) fail(ErrorCode::ZeroBeta, "beta must be nonzero");
    if (D == 0) fail(ErrorCode::DIsSquare, "D must be a non-square");
    if (D > 0 && mpz_perfect_square_p(D.get_mpz_t())) fail(ErrorCode::DIsSquare, "D is a perfect square");

    std::set<mpz_class> places;
    places.insert(2);
    for (const auto& [p, e] : factor_integer(D, bound)) {
        (void)e;
        if (p != 2) places.insert(p);
    }
    for (const auto& [p, e] : factor_integer(beta.get_num() * beta.get_den(), bound)) {
        (void)e;
        if (p != 2) places.insert(p);
    }

    mpq_class d(D);
    if (hilbert_symbol(beta, d, 0) != 1) return false;
    for (const mpz_class& p : places)
        if (hilbert_symbol(beta, d, p) != 1) return false;
    return true;
}

std::optional<std::pair<mpq_class, mpq_class>> norm_witness_search(const mpz_class& D,
                                                                   const mpq_class& beta,
                                                                   long height) {
    auto rational_sqrt = [](const mpq_class& x) -> std::optional<mpq_class> {
        if (x < 0) return std::nullopt;
        if (!mpz_perfect_square_p(x.get_num().get_mpz_t())) return std::nullopt;
        if (!mpz_perfect_square_p(x.get_den().get_mpz_t())) return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), x.get_num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), x.get_den().get_mpz_t());
        return mpq_class(n, d);
    };
    for (long pb = 0; pb <= height; ++pb)
        for (long qb = 1; qb <= height; ++qb) {
            mpq_class b(pb, qb);
            b.canonicalize();
            mpq_class a2 = beta + mpq_class(D) * b * b;
            if (auto a = rational_sqrt(a2)) return std::make_pair(*a, b);
        }
    return std::nullopt;
}

} // namespace pvs
