#include <cmath>

#include "algebra.hpp"

namespace alg {

namespace {

uint64_t pow_count(int p, int dim) {
    uint64_t n = 1;
    for (int i = 0; i < dim; ++i) {
        if (n > (uint64_t{1} << 62) / static_cast<uint64_t>(p)) return uint64_t{1} << 63;
        n *= static_cast<uint64_t>(p);
    }
    return n;
}

// Close the row span under left/right multiplication by every basis element.
Mat ideal_closure(const Algebra& a, const Mat& rows) {
    Mat v = gfp::row_space(rows);
    while (true) {
        Mat next = v;
        for (int i = 0; i < a.dim(); ++i) {
            next = gfp::rowspace_sum(next, v * a.data()->left_mats[i]);
            next = gfp::rowspace_sum(next, v * a.data()->right_mats[i]);
        }
        if (next.rows() == v.rows()) return next;
        v = next;
    }
}

// Products of all basis pairs of two row spans.
Mat span_products(const Algebra& a, const Mat& u, const Mat& w) {
    if (u.rows() == 0 || w.rows() == 0) return Mat(0, a.dim(), a.p());
    Mat out(u.rows() * w.rows(), a.dim(), a.p());
    int r = 0;
    for (int j = 0; j < w.rows(); ++j) {
        Mat right = a.right_mul(a.element(w.row(j)));
        Mat prods = u * right;  // row i = u_i * w_j
        for (int i = 0; i < u.rows(); ++i, ++r)
            for (int c = 0; c < a.dim(); ++c) out.set(r, c, prods.at(i, c));
    }
    return gfp::row_space(out);
}

bool nilpotent_span(const Algebra& a, const Mat& w) {
    Mat p = w;
    for (int iter = 0; iter < a.dim() + 1; ++iter) {
        if (p.rows() == 0) return true;
        p = span_products(a, p, w);
    }
    return p.rows() == 0;
}

Mat embed_rows(const Mat& rows, const Mat& inj) {
    if (rows.rows() == 0) return Mat(0, inj.cols(), inj.modulus());
    return rows * inj;
}

Mat radical_basis_impl(const Algebra& a, uint64_t scan_bound);

Mat radical_via_structure(const Algebra& a, uint64_t scan_bound) {
    using Kind = Algebra::Kind;
    switch (a.kind()) {
        case Kind::matrix_algebra:
            return Mat(0, a.dim(), a.p());
        case Kind::product: {
            Algebra fa(a.data()->factor_a), fb(a.data()->factor_b);
            Mat ja = radical_basis_impl(fa, scan_bound);
            Mat jb = radical_basis_impl(fb, scan_bound);
            Mat ia(fa.dim(), a.dim(), a.p()), ib(fb.dim(), a.dim(), a.p());
            for (int i = 0; i < fa.dim(); ++i) ia.set(i, i, 1);
            for (int i = 0; i < fb.dim(); ++i) ib.set(i, fa.dim() + i, 1);
            return gfp::rowspace_sum(embed_rows(ja, ia), embed_rows(jb, ib));
        }
        case Kind::opposite: {
            // The largest nilpotent two-sided ideal is the same subspace.
            Algebra base(a.data()->base);
            return radical_basis_impl(base, scan_bound);
        }
        case Kind::generic:
            break;
    }
    // Exhaustive membership scan: x lies in J(A) iff the two-sided ideal it
    // generates is nilpotent.
    uint64_t count = pow_count(a.p(), a.dim());
    if (count > scan_bound)
        throw gfp::guard_error("jacobson_radical: p^dim exceeds scan bound");
    std::vector<uint8_t> v(a.dim(), 0);
    Mat accepted(0, a.dim(), a.p());
    do {
        Mat row = Mat::row_vector(v, a.p());
        if (row.is_zero()) continue;
        if (gfp::rowspace_contains(accepted, row)) continue;  // span already known to be inside J
        Mat ideal = ideal_closure(a, row);
        if (nilpotent_span(a, ideal)) accepted = gfp::rowspace_sum(accepted, ideal);
    } while (gfp::next_vector(v, a.p()));
    return accepted;
}

Mat radical_basis_impl(const Algebra& a, uint64_t scan_bound) {
    {
        std::lock_guard<std::mutex> lk(a.data()->cache_mu);
        if (a.data()->radical_cache) return *a.data()->radical_cache;
    }
    Mat j = radical_via_structure(a, scan_bound);
    Subspace s(a, j);
    // Internal consistency: the result must itself be a nilpotent ideal.
    if (!a.is_nilpotent_ideal(s)) throw std::logic_error("jacobson_radical: result not nilpotent");
    {
        std::lock_guard<std::mutex> lk(a.data()->cache_mu);
        a.data()->radical_cache = s.basis();
    }
    return s.basis();
}

}  // namespace

Subspace Algebra::jacobson_radical(uint64_t scan_bound) const {
    return Subspace(*this, radical_basis_impl(*this, scan_bound));
}

bool Algebra::is_von_neumann_regular(uint64_t scan_bound) const {
    // Finite-dimensional: von Neumann regular iff semisimple iff J = 0.
    return jacobson_radical(scan_bound).dim() == 0;
}

bool Algebra::is_nilpotent_ideal(const Subspace& v) const {
    if (!v.algebra().same(*this)) throw std::invalid_argument("is_nilpotent_ideal: wrong algebra");
    Mat closed = ideal_closure(*this, v.basis());
    return nilpotent_span(*this, closed);
}

Element Algebra::lift_idempotent(const Element& x, const Subspace& nil_ideal) const {
    if (!x.algebra().same(*this) || !nil_ideal.algebra().same(*this))
        throw std::invalid_argument("lift_idempotent: algebra mismatch");
    if (!is_nilpotent_ideal(nil_ideal)) throw std::invalid_argument("lift_idempotent: ideal not nilpotent");
    Element err = mul(x, x) - x;
    if (!nil_ideal.contains(err)) throw std::invalid_argument("lift_idempotent: x^2 - x outside the ideal");
    // t <- 3t^2 - 2t^3 squares the defect t^2 - t each round; the whole
    // computation stays in the commutative subalgebra generated by x.
    Element t = x;
    for (int iter = 0; iter <= dim(); ++iter) {
        Element t2 = mul(t, t);
        if (t2 == t) {
            if (!nil_ideal.contains(t - x)) throw std::logic_error("lift_idempotent: drifted out of x + N");
            return t;
        }
        Element t3 = mul(t2, t);
        t = element(t2.coords().scaled(3) - t3.coords().scaled(2));
    }
    throw std::invalid_argument("lift_idempotent: did not stabilize (precondition violated?)");
}

Mat radical_oracle(const Algebra& a, uint64_t scan_bound) {
    uint64_t count = pow_count(a.p(), a.dim());
    if (count > scan_bound) throw gfp::guard_error("radical_oracle: p^dim exceeds scan bound");
    Mat accepted(0, a.dim(), a.p());
    std::vector<uint8_t> xv(a.dim(), 0);
    do {
        Mat xrow = Mat::row_vector(xv, a.p());
        Element x = a.element(xrow);
        bool in_radical = true;
        std::vector<uint8_t> yv(a.dim(), 0);
        do {
            Element y = a.element(Mat::row_vector(yv, a.p()));
            Element z = a.unit() - a.mul(y, x);
            // Invertibility via the regular representation: right
            // multiplication by z is bijective iff z is invertible.
            if (gfp::rank(a.right_mul(z)) != a.dim()) {
                in_radical = false;
                break;
            }
        } while (gfp::next_vector(yv, a.p()));
        if (in_radical) accepted = gfp::rowspace_sum(accepted, xrow);
    } while (gfp::next_vector(xv, a.p()));
    return accepted;
}

}  // namespace alg
