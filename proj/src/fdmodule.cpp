#include "fdmodule.hpp"

#include <random>
#include <stdexcept>

namespace fdmod {

using alg::Element;
using gfp::mul;
using gfp::sub;

namespace {

Mat flatten_rows(const std::vector<Mat>& mats) {
    if (mats.empty()) return Mat();
    const int m2 = mats[0].rows() * mats[0].cols();
    Mat out(static_cast<int>(mats.size()), m2, mats[0].modulus());
    for (size_t i = 0; i < mats.size(); ++i)
        for (int r = 0; r < mats[i].rows(); ++r)
            for (int c = 0; c < mats[i].cols(); ++c)
                out.set(static_cast<int>(i), r * mats[i].cols() + c, mats[i].at(r, c));
    return out;
}

void validate_module(const Algebra& a, int dim, const std::vector<Mat>& act) {
    const int n = a.dim(), p = a.p();
    if (dim > gfp::kMaxDim) throw gfp::guard_error("module: dimension cap exceeded");
    if (static_cast<int>(act.size()) != n) throw std::invalid_argument("module: one action matrix per basis vector");
    for (const Mat& m : act)
        if (m.rows() != dim || m.cols() != dim || m.modulus() != p)
            throw std::invalid_argument("module: action matrix shape");
    if (dim == 0) return;

    // Unit acts as identity.
    Mat u(dim, dim, p);
    for (int k = 0; k < n; ++k) {
        int c = a.unit_coords()[k];
        if (c) u = u + act[k].scaled(c);
    }
    if (u != Mat::identity(dim, p)) throw std::invalid_argument("module: unit does not act as identity");

    // Structure constants on all basis pairs: act(b_i) act(b_j) must equal
    // sum_k c_ijk act(b_k). The right-hand sides for all pairs come from one
    // matrix product against the flattened action.
    Mat actflat = flatten_rows(act);  // n x dim^2
    Mat c(n * n, n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) c.set(i * n + j, k, a.table()[i][j][k]);
    Mat rhs = c * actflat;  // row (i*n+j) = flattened sum_k c_ijk act(k)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat prod = act[i] * act[j];
            for (int r = 0; r < dim; ++r)
                for (int col = 0; col < dim; ++col)
                    if (prod.at(r, col) != rhs.at(i * n + j, r * dim + col))
                        throw std::invalid_argument("module: action violates structure constants");
        }
}

}  // namespace

Module Module::from_action(Algebra a, int dim, std::vector<Mat> act) {
    validate_module(a, dim, act);
    auto d = std::make_shared<Data>();
    d->a = std::move(a);
    d->dim = dim;
    d->act = std::move(act);
    return Module(std::move(d));
}

Mat Module::action_of(const alg::Element& x) const {
    if (!x.algebra().same(algebra())) throw std::invalid_argument("action_of: element from wrong algebra");
    Mat m(dim(), dim(), algebra().p());
    for (int i = 0; i < algebra().dim(); ++i) {
        int c = x.coords().at(0, i);
        if (c) m = m + d_->act[i].scaled(c);
    }
    return m;
}

Map::Map(Module source, Module target, Mat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
    if (!src_.algebra().same(tgt_.algebra())) throw std::invalid_argument("map: algebra mismatch");
    if (m_.rows() != src_.dim() || m_.cols() != tgt_.dim() || m_.modulus() != src_.algebra().p())
        throw std::invalid_argument("map: matrix shape");
    for (int i = 0; i < src_.algebra().dim(); ++i)
        if (src_.action(i) * m_ != m_ * tgt_.action(i))
            throw std::invalid_argument("map: does not intertwine the action");
}

Map compose(const Map& first, const Map& then) {
    if (!first.target().same(then.source())) throw std::invalid_argument("compose: middle module mismatch");
    return Map(first.source(), then.target(), first.matrix() * then.matrix());
}

Submodule::Submodule(Module ambient, const Mat& rows) : amb_(std::move(ambient)) {
    basis_ = rows.rows() == 0 ? Mat(0, amb_.dim(), amb_.algebra().p()) : gfp::row_space(rows);
    if (basis_.rows() > 0 && basis_.cols() != amb_.dim())
        throw std::invalid_argument("submodule: width mismatch");
    for (int i = 0; i < amb_.algebra().dim(); ++i)
        if (!gfp::rowspace_contains(basis_, basis_ * amb_.action(i)))
            throw std::invalid_argument("submodule: span is not action-closed");
}

Module regular_module(const Algebra& a) {
    std::vector<Mat> act;
    for (int i = 0; i < a.dim(); ++i) act.push_back(a.regular_action(a.basis_element(i)));
    return Module::from_action(a, a.dim(), std::move(act));
}

Module free_module(const Algebra& a, int rank) {
    const int d = a.dim();
    std::vector<Mat> act;
    for (int i = 0; i < a.dim(); ++i) {
        Mat reg = a.regular_action(a.basis_element(i));
        Mat block(rank * d, rank * d, a.p());
        for (int b = 0; b < rank; ++b)
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) block.set(b * d + r, b * d + c, reg.at(r, c));
        act.push_back(std::move(block));
    }
    return Module::from_action(a, rank * d, std::move(act));
}

Module zero_module(const Algebra& a) {
    std::vector<Mat> act(a.dim(), Mat(0, 0, a.p()));
    return Module::from_action(a, 0, std::move(act));
}

Mat submodule_closure(const Module& m, const Mat& rows) {
    Mat v = rows.rows() == 0 ? Mat(0, m.dim(), m.algebra().p()) : gfp::row_space(rows);
    while (true) {
        Mat next = v;
        for (int i = 0; i < m.algebra().dim(); ++i) next = gfp::rowspace_sum(next, v * m.action(i));
        if (next.rows() == v.rows()) return next;
        v = next;
    }
}

SubmoduleView submodule_module(const Module& m, const Submodule& sub) {
    const Mat& b = sub.basis();
    const int r = b.rows(), p = m.algebra().p();
    std::vector<Mat> act;
    for (int i = 0; i < m.algebra().dim(); ++i) {
        if (r == 0) {
            act.push_back(Mat(0, 0, p));
            continue;
        }
        auto coords = gfp::coordinates_in_rowspace(b, b * m.action(i));
        if (!coords) throw std::logic_error("submodule_module: basis not closed");
        act.push_back(*coords);
    }
    Module sm = Module::from_action(m.algebra(), r, std::move(act));
    return SubmoduleView{sm, Map(sm, m, r == 0 ? Mat(0, m.dim(), p) : b)};
}

QuotientView quotient_module(const Module& m, const Submodule& sub) {
    if (!sub.ambient().same(m)) throw std::invalid_argument("quotient_module: submodule of a different module");
    const int n = m.dim(), p = m.algebra().p();
    gfp::Echelon e = gfp::rref(sub.basis());
    std::vector<bool> is_piv(n, false);
    for (int c : e.pivots) is_piv[c] = true;
    std::vector<int> rest;
    for (int c = 0; c < n; ++c)
        if (!is_piv[c]) rest.push_back(c);
    const int q = static_cast<int>(rest.size());

    // projection: reduce modulo the basis, then read the non-pivot coords
    Mat proj(n, q, p);
    for (int v = 0; v < n; ++v) {
        std::vector<int> red(n, 0);
        red[v] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i) {
            int c = red[e.pivots[i]];
            if (!c) continue;
            for (int j = 0; j < n; ++j) red[j] = gfp::sub(red[j], mul(c, e.reduced.at(static_cast<int>(i), j), p), p);
        }
        for (int j = 0; j < q; ++j) proj.set(v, j, red[rest[j]]);
    }
    Mat lift(q, n, p);  // standard representatives
    for (int j = 0; j < q; ++j) lift.set(j, rest[j], 1);

    std::vector<Mat> act;
    for (int i = 0; i < m.algebra().dim(); ++i) act.push_back(lift * m.action(i) * proj);
    Module qm = Module::from_action(m.algebra(), q, std::move(act));
    return QuotientView{qm, Map(m, qm, proj), lift};
}

DirectSum direct_sum(const Module& a, const Module& b) {
    if (!a.algebra().same(b.algebra())) throw std::invalid_argument("direct_sum: algebra mismatch");
    const int da = a.dim(), db = b.dim(), p = a.algebra().p();
    std::vector<Mat> act;
    for (int i = 0; i < a.algebra().dim(); ++i) {
        Mat m(da + db, da + db, p);
        for (int r = 0; r < da; ++r)
            for (int c = 0; c < da; ++c) m.set(r, c, a.action(i).at(r, c));
        for (int r = 0; r < db; ++r)
            for (int c = 0; c < db; ++c) m.set(da + r, da + c, b.action(i).at(r, c));
        act.push_back(std::move(m));
    }
    Module s = Module::from_action(a.algebra(), da + db, std::move(act));
    Mat ia(da, da + db, p), ib(db, da + db, p), pa(da + db, da, p), pb(da + db, db, p);
    for (int i = 0; i < da; ++i) {
        ia.set(i, i, 1);
        pa.set(i, i, 1);
    }
    for (int i = 0; i < db; ++i) {
        ib.set(i, da + i, 1);
        pb.set(da + i, i, 1);
    }
    return DirectSum{s, Map(a, s, ia), Map(b, s, ib), Map(s, a, pa), Map(s, b, pb)};
}

Submodule radical_submodule(const Module& m) {
    Mat j = m.algebra().jacobson_radical().basis();
    Mat rows(0, m.dim(), m.algebra().p());
    for (int i = 0; i < j.rows(); ++i)
        rows = gfp::rowspace_sum(rows, m.action_of(m.algebra().element(j.row(i))));
    return Submodule(m, rows);
}

Module top(const Module& m) { return top_with_map(m).module; }

QuotientView top_with_map(const Module& m) { return quotient_module(m, radical_submodule(m)); }

bool is_small(const Submodule& x, const Module& m) {
    if (!x.ambient().same(m)) throw std::invalid_argument("is_small: submodule of a different module");
    return gfp::rowspace_contains(radical_submodule(m).basis(), x.basis());
}

bool brute_small(const Submodule& x, const Module& m) {
    if (!x.ambient().same(m)) throw std::invalid_argument("brute_small: submodule of a different module");
    if (m.algebra().p() != 2 || m.dim() > 6) throw gfp::guard_error("brute_small: guard is p=2, dim<=6");
    for (const Mat& y : gfp::enumerate_subspaces(m.dim(), 2)) {
        bool closed = true;
        for (int i = 0; i < m.algebra().dim() && closed; ++i)
            closed = gfp::rowspace_contains(y, y * m.action(i));
        if (!closed) continue;
        if (gfp::rowspace_sum(x.basis(), y).rows() == m.dim() && y.rows() != m.dim()) return false;
    }
    return true;
}

std::vector<Map> hom_space(const Module& m, const Module& n) {
    if (!m.algebra().same(n.algebra())) throw std::invalid_argument("hom_space: algebra mismatch");
    const int dm = m.dim(), dn = n.dim(), p = m.algebra().p(), na = m.algebra().dim();
    if (dm == 0 || dn == 0) return {};
    // Unknown F (dm x dn), flattened row-major; constraints act_M(i) F = F act_N(i).
    Mat sys(na * dm * dn, dm * dn, p);
    int row = 0;
    for (int i = 0; i < na; ++i) {
        const Mat& am = m.action(i);
        const Mat& an = n.action(i);
        for (int r = 0; r < dm; ++r)
            for (int c = 0; c < dn; ++c, ++row) {
                for (int k = 0; k < dm; ++k)
                    if (am.at(r, k)) sys.set(row, k * dn + c, am.at(r, k));
                for (int k = 0; k < dn; ++k)
                    if (an.at(k, c)) sys.set(row, r * dn + k, sub(sys.at(row, r * dn + k), an.at(k, c), p));
            }
    }
    Mat kern = gfp::kernel_basis(sys);
    std::vector<Map> out;
    for (int i = 0; i < kern.rows(); ++i) {
        Mat f(dm, dn, p);
        for (int r = 0; r < dm; ++r)
            for (int c = 0; c < dn; ++c) f.set(r, c, kern.at(i, r * dn + c));
        out.emplace_back(m, n, std::move(f));
    }
    return out;
}

Module restrict(const alg::Morphism& phi, const Module& m) {
    if (!m.algebra().same(phi.target())) throw std::invalid_argument("restrict: module not over the target");
    std::vector<Mat> act;
    for (int i = 0; i < phi.source().dim(); ++i)
        act.push_back(m.action_of(phi.apply(phi.source().basis_element(i))));
    return Module::from_action(phi.source(), m.dim(), std::move(act));
}

Module induce_right(const Module& v, const alg::Morphism& iota) {
    if (!v.algebra().same(iota.source())) throw std::invalid_argument("induce_right: module not over the source");
    const Algebra& s = iota.source();
    const Algebra& t = iota.target();
    const int m = v.dim(), dt = t.dim(), p = s.p();
    const int big = m * dt;
    if (big == 0) return zero_module(t);

    std::vector<Mat> act;
    for (int l = 0; l < dt; ++l) {
        Mat a(big, big, p);
        for (int vm = 0; vm < m; ++vm)
            for (int j = 0; j < dt; ++j)
                for (int k = 0; k < dt; ++k) {
                    int c = t.table()[j][l][k];
                    if (c) a.set(vm * dt + j, vm * dt + k, c);
                }
        act.push_back(std::move(a));
    }
    Module tensor = Module::from_action(t, big, std::move(act));

    // balancing relations (v_a s_i) x b_j - v_a x (iota(s_i) b_j)
    Mat rel(m * s.dim() * dt, big, p);
    int r = 0;
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < s.dim(); ++i) {
            Mat moved = v.action(i).row(a);  // coords of v_a * s_i
            Mat im = iota.apply(s.basis_element(i)).coords();
            for (int j = 0; j < dt; ++j, ++r) {
                for (int b = 0; b < m; ++b) rel.set(r, b * dt + j, moved.at(0, b));
                Mat prod = im * t.right_mul(t.basis_element(j));  // iota(s_i) * b_j
                for (int k = 0; k < dt; ++k) rel.set(r, a * dt + k, sub(rel.at(r, a * dt + k), prod.at(0, k), p));
            }
        }
    return quotient_module(tensor, Submodule(tensor, rel)).module;
}

Module random_module(const Algebra& a, int gens, int rels, uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (gens == 0) return zero_module(a);
    Module f = free_module(a, gens);
    const int d = a.dim();
    Mat rows(rels, gens * d, a.p());
    for (int i = 0; i < rels; ++i)
        for (int c = 0; c < gens * d; ++c) rows.set(i, c, static_cast<int>(rng() % a.p()));
    Mat image = submodule_closure(f, rows);
    return quotient_module(f, Submodule(f, image)).module;
}

}  // namespace fdmod
