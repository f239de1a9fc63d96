#include "pvs/binary_hermitian.hpp"

namespace pvs {

HermPair make_w1(const HermTower& t) {
    Mat x1 = Mat::diag(t.ext, {t.ext->one(), t.ext->zero()});
    Mat x2 = Mat::diag(t.ext, {t.ext->zero(), t.ext->one()});
    return make_herm_pair(t, std::move(x1), std::move(x2));
}

HermGroupElem make_tau1(const HermTower& t) {
    Mat g1(t.ext, 2, 2);
    g1.at(0, 1) = t.ext->one();
    g1.at(1, 0) = t.ext->one();
    Mat g2(t.base, 2, 2);
    g2.at(0, 1) = t.base->one();
    g2.at(1, 0) = t.base->one();
    return make_herm_group(t, std::move(g1), std::move(g2));
}

namespace {

void check_monic_quadratic(const BinaryForm& f, const RingPtr& base) {
    if (f.deg != 2 || !Ring::same(f.ring, base) || !f.c[0].is_one())
        fail(ErrorCode::MalformedInput, "expected a monic quadratic over the base field");
    if (binary_form_disc(f).is_zero()) fail(ErrorCode::DegeneratePolynomial, "discriminant vanishes");
}

} // namespace

Case1Alpha make_w_alpha1(const HermTower& t, const BinaryForm& f) {
    check_monic_quadratic(f, t.base);
    const Elem a1 = f.c[1], a2 = f.c[2];

    Case1Alpha ctx;
    ctx.tower = t;
    ctx.f = f;
    // k(alpha) = base[a]/(a^2 + a1 a + a2), swap automorphism a -> -a1 - a
    Poly fa(t.base, {a2, a1, t.base->one()});
    Poly swap(t.base, {-a1, -t.base->one()});
    ctx.k_alpha = Ring::make_extension(t.base, fa, {swap});
    ctx.alpha1 = ctx.k_alpha->generator();
    ctx.alpha2 = ctx.k_alpha->embed_base(-a1) - ctx.alpha1;
    ctx.comp = tensor_extend(t.ext, ctx.k_alpha);
    ctx.sigma_hat = ctx.comp.lifted_left(t.sigma);
    std::optional<Aut> nu = ctx.k_alpha->unique_aut_of_order(2);
    if (!nu) fail(ErrorCode::InternalCheckFailed, "quadratic algebra lacks its involution");
    ctx.nu_hat = ctx.comp.lifted_right(*nu);

    // the explicit rational pencil of the representative
    const Elem b = a1;
    const Elem c = a1 * a1 - t.base->from_int(2) * a2;
    const Elem d = a1 * a1 * a1 - t.base->from_int(3) * a1 * a2;
    auto E = [&](const Elem& v) { return t.ext->lift(v); };
    Mat x1 = Mat::from_rows(t.ext, {{E(t.base->from_int(2)), E(b)}, {E(b), E(c)}});
    Mat x2 = Mat::from_rows(t.ext, {{E(b), E(c)}, {E(c), E(d)}});
    ctx.w_alpha = make_herm_pair(t, std::move(x1), std::move(x2));
    return ctx;
}

HermGroupElem stab1_w(const HermTower& t, const Elem& t11, const Elem& t12) {
    if (!Ring::same(t11.ring(), t.ext) || !Ring::same(t12.ring(), t.ext))
        fail(ErrorCode::TowerMismatch, "stabilizer parameters must lie in the extension");
    if (!t11.is_unit() || !t12.is_unit()) fail(ErrorCode::NonUnit, "stabilizer parameters must be units");
    Elem n1 = t.ext->norm(t11).inverse();
    Elem n2 = t.ext->norm(t12).inverse();
    HermGroupElem g = make_herm_group(t, Mat::diag(t.ext, {t11, t12}), Mat::diag(t.base, {n1, n2}));
    HermPair w = make_w1(t);
    if (!(herm_act(g, w).x1 == w.x1) || !(herm_act(g, w).x2 == w.x2))
        fail(ErrorCode::InternalCheckFailed, "constructed element does not stabilize w");
    return g;
}

HermGroupElem stab1_w_alpha(const Case1Alpha& ctx, const Elem& t11) {
    const RingPtr& C = ctx.comp.product;
    if (!Ring::same(t11.ring(), C)) fail(ErrorCode::TowerMismatch, "parameter must lie in the composite");
    if (!t11.is_unit()) fail(ErrorCode::NonUnit, "parameter must be a unit");
    const RingPtr& K = ctx.k_alpha;

    Elem t12 = ctx.nu_hat.apply(t11);
    Elem n1 = ctx.comp.project_right(C->norm(t11).valid() ? C->embed_base(C->norm(t11)) : Elem());
    // norm lands in K already; the line above normalizes the ring handle
    n1 = C->norm(t11);
    Elem n2 = C->norm(t12);

    // first component: A diag(t11, t12) A^-1 over the composite, descended to ext
    Elem a1C = ctx.comp.embed_right(ctx.alpha1);
    Elem a2C = ctx.comp.embed_right(ctx.alpha2);
    Mat A = Mat::from_rows(C, {{C->one(), C->one()}, {-a1C, -a2C}});
    Mat h1C = A * Mat::diag(C, {t11, t12}) * A.inverse();
    Mat h1(ctx.tower.ext, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) h1.at(i, j) = ctx.comp.project_left(h1C.at(i, j));

    // second component: A_K diag(N(t11)^-1, N(t12)^-1) A_K^-1 over K, descended to base
    Mat AK = Mat::from_rows(K, {{K->one(), K->one()}, {-ctx.alpha1, -ctx.alpha2}});
    Mat h2K = AK * Mat::diag(K, {n1.inverse(), n2.inverse()}) * AK.inverse();
    Mat h2(ctx.tower.base, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) h2.at(i, j) = K->descend_to(ctx.tower.base, h2K.at(i, j));

    HermGroupElem g = make_herm_group(ctx.tower, std::move(h1), std::move(h2));
    HermPair acted = herm_act(g, ctx.w_alpha);
    if (!(acted.x1 == ctx.w_alpha.x1) || !(acted.x2 == ctx.w_alpha.x2))
        fail(ErrorCode::InternalCheckFailed, "constructed element does not stabilize w_alpha");
    return g;
}

} // namespace pvs
