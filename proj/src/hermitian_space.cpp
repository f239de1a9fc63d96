#include "pvs/hermitian_space.hpp"

namespace pvs {

HermTower HermTower::make(RingPtr ext) {
    if (ext->is_leaf() || ext->degree() != 2)
        fail(ErrorCode::TowerMismatch, "Hermitian structure needs a quadratic extension");
    std::optional<Aut> sigma = ext->unique_aut_of_order(2);
    if (!sigma) fail(ErrorCode::TowerMismatch, "quadratic tower needs a unique involution");
    return make(ext->base(), std::move(ext), *sigma);
}

HermTower HermTower::make(RingPtr base, RingPtr ext, Aut sigma) {
    if (sigma.order() != 2) fail(ErrorCode::TowerMismatch, "designated involution must have order 2");
    if (!Ring::same(ext->base(), base)) fail(ErrorCode::TowerMismatch, "ext must extend base");
    if (!base->is_leaf()) {
        // the involution must fix the base
        Elem g = ext->embed_base(base->generator());
        if (!(sigma.apply(g) == g)) fail(ErrorCode::TowerMismatch, "involution moves the base");
    }
    HermTower t;
    t.base = std::move(base);
    t.ext = std::move(ext);
    t.sigma = sigma;
    return t;
}

namespace {

void check_same_tower(const HermTower& a, const HermTower& b) {
    if (!Ring::same(a.ext, b.ext) || !(a.sigma == b.sigma))
        fail(ErrorCode::TowerMismatch, "elements from different towers");
}

bool is_hermitian(const HermTower& t, const Mat& m) {
    return m.transpose().applied(t.sigma) == m;
}

} // namespace

HermPair make_herm_pair(const HermTower& t, Mat x1, Mat x2) {
    if (x1.rows != x1.cols || x2.rows != x2.cols || x1.rows != x2.rows)
        fail(ErrorCode::MalformedInput, "Hermitian pair needs square matrices of equal size");
    if (!is_hermitian(t, x1) || !is_hermitian(t, x2))
        fail(ErrorCode::MalformedInput, "matrix violates the transpose-conjugate condition");
    return HermPair{t, std::move(x1), std::move(x2)};
}

HermGroupElem make_herm_group(const HermTower& t, Mat g1, Mat g2) {
    if (g2.rows != 2 || g2.cols != 2) fail(ErrorCode::MalformedInput, "second component must be 2x2");
    if (!g1.det().is_unit() || !g2.det().is_unit())
        fail(ErrorCode::SingularGroupElement, "group element has a non-unit determinant");
    return HermGroupElem{t, std::move(g1), std::move(g2)};
}

HermGroupElem herm_mul(const HermGroupElem& a, const HermGroupElem& b) {
    check_same_tower(a.tower, b.tower);
    return HermGroupElem{a.tower, a.g1 * b.g1, a.g2 * b.g2};
}

HermGroupElem herm_inv(const HermGroupElem& g) {
    return HermGroupElem{g.tower, g.g1.inverse(), g.g2.inverse()};
}

HermPair herm_act(const HermGroupElem& g, const HermPair& x) {
    check_same_tower(g.tower, x.tower);
    if (g.n() != x.n()) fail(ErrorCode::TowerMismatch, "group and space dimensions differ");
    const HermTower& t = x.tower;
    // v g2 = (a v1 + c v2, b v1 + d v2), so the new pencil matrices are
    // g1 (a x1 + b x2) g1*^t and g1 (c x1 + d x2) g1*^t
    Elem a = t.ext->lift(g.g2.at(0, 0)), b = t.ext->lift(g.g2.at(0, 1));
    Elem c = t.ext->lift(g.g2.at(1, 0)), d = t.ext->lift(g.g2.at(1, 1));
    Mat conj = g.g1.applied(t.sigma).transpose();
    Mat y1 = g.g1 * (x.x1.scaled(a) + x.x2.scaled(b)) * conj;
    Mat y2 = g.g1 * (x.x1.scaled(c) + x.x2.scaled(d)) * conj;
    if (!is_hermitian(t, y1) || !is_hermitian(t, y2))
        fail(ErrorCode::InternalCheckFailed, "action output violates the Hermitian condition");
    return HermPair{t, std::move(y1), std::move(y2)};
}

BinaryForm herm_pencil_det(const HermPair& x) {
    const RingPtr& R = x.tower.ext;
    auto entry = [&](int i, int j) {
        return BinaryForm(R, 1, {x.x1.at(i, j), x.x2.at(i, j)});
    };
    if (x.n() == 2) {
        return entry(0, 0) * entry(1, 1) + (entry(0, 1) * entry(1, 0)).scaled(-R->one());
    }
    if (x.n() == 3) {
        BinaryForm pos = entry(0, 0) * entry(1, 1) * entry(2, 2) + entry(0, 1) * entry(1, 2) * entry(2, 0) +
                         entry(0, 2) * entry(1, 0) * entry(2, 1);
        BinaryForm neg = entry(0, 2) * entry(1, 1) * entry(2, 0) + entry(0, 1) * entry(1, 0) * entry(2, 2) +
                         entry(0, 0) * entry(1, 2) * entry(2, 1);
        return pos + neg.scaled(-R->one());
    }
    fail(ErrorCode::UnsupportedDegree, "pencil determinant supports n = 2, 3");
}

BinaryForm herm_invariant_form(const HermPair& x) {
    BinaryForm F = herm_pencil_det(x);
    const RingPtr& ext = x.tower.ext;
    std::vector<Elem> down;
    down.reserve(F.c.size());
    for (const Elem& ci : F.c) down.push_back(ext->to_base(ci)); // throws NotRational if not sigma-fixed
    return BinaryForm(x.tower.base, F.deg, std::move(down));
}

Elem herm_delta(const HermPair& x) { return binary_form_disc(herm_invariant_form(x)); }

bool herm_semistable(const HermPair& x) { return !herm_delta(x).is_zero(); }

ErLabel herm_classify(const HermPair& x) {
    BinaryForm F = herm_invariant_form(x);
    if (binary_form_disc(F).is_zero()) fail(ErrorCode::NotSemistable, "zero discriminant");
    return splitting_label(F);
}

} // namespace pvs
