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

// Basis rows of the corner subspace e A e.
Mat corner_basis(const Algebra& a, const Element& e) {
    Mat rows(a.dim(), a.dim(), a.p());
    Mat le = a.left_mul(e), re = a.right_mul(e);
    for (int i = 0; i < a.dim(); ++i) {
        Mat v(1, a.dim(), a.p());
        v.set(0, i, 1);
        Mat w = (v * le) * re;  // e * b_i * e
        for (int c = 0; c < a.dim(); ++c) rows.set(i, c, w.at(0, c));
    }
    return gfp::row_space(rows);
}

// Scan the corner eAe for an idempotent other than 0 and e.
std::optional<Element> proper_corner_idempotent(const Algebra& a, const Element& e, uint64_t scan_bound) {
    Mat basis = corner_basis(a, e);
    const int r = basis.rows();
    if (pow_count(a.p(), r) > scan_bound)
        throw gfp::guard_error("primitive_idempotents: corner scan exceeds bound");
    std::vector<uint8_t> c(r, 0);
    if (r == 0) return std::nullopt;
    while (gfp::next_vector(c, a.p())) {
        Mat coords(1, a.dim(), a.p());
        for (int i = 0; i < r; ++i) {
            if (!c[i]) continue;
            for (int j = 0; j < a.dim(); ++j)
                coords.set(0, j, gfp::add(coords.at(0, j), gfp::mul(c[i], basis.at(i, j), a.p()), a.p()));
        }
        Element f = a.element(coords);
        if (f.is_zero() || f == e) continue;
        if (a.mul(f, f) == f) return f;
    }
    return std::nullopt;
}

void split(const Algebra& a, const Element& e, uint64_t scan_bound, std::vector<Element>& out) {
    auto f = proper_corner_idempotent(a, e, scan_bound);
    if (!f) {
        out.push_back(e);
        return;
    }
    // f and e - f are orthogonal idempotents in eAe summing to e.
    split(a, *f, scan_bound, out);
    split(a, e - *f, scan_bound, out);
}

std::vector<Element> primitives_impl(const Algebra& a, uint64_t scan_bound) {
    using Kind = Algebra::Kind;
    std::vector<Element> out;
    switch (a.kind()) {
        case Kind::matrix_algebra: {
            const int n = a.data()->matrix_n;
            for (int i = 0; i < n; ++i) {
                Mat c(1, a.dim(), a.p());
                c.set(0, i * n + i, 1);
                Element e = a.element(c);
                if (proper_corner_idempotent(a, e, scan_bound))
                    throw std::logic_error("primitive_idempotents: matrix unit not primitive");
                out.push_back(e);
            }
            return out;
        }
        case Kind::product: {
            Algebra fa(a.data()->factor_a), fb(a.data()->factor_b);
            Mat ia(fa.dim(), a.dim(), a.p()), ib(fb.dim(), a.dim(), a.p());
            for (int i = 0; i < fa.dim(); ++i) ia.set(i, i, 1);
            for (int i = 0; i < fb.dim(); ++i) ib.set(i, fa.dim() + i, 1);
            for (const Element& e : fa.primitive_idempotents(scan_bound)) out.push_back(a.element(e.coords() * ia));
            for (const Element& e : fb.primitive_idempotents(scan_bound)) out.push_back(a.element(e.coords() * ib));
            return out;
        }
        case Kind::opposite: {
            Algebra base(a.data()->base);
            // Idempotents, orthogonality and corner dimensions are unchanged
            // under reversal, so the base list transfers verbatim.
            for (const Element& e : base.primitive_idempotents(scan_bound)) out.push_back(a.element(e.coords()));
            return out;
        }
        case Kind::generic:
            split(a, a.unit(), scan_bound, out);
            return out;
    }
    return out;
}

}  // namespace

std::vector<Element> Algebra::primitive_idempotents(uint64_t scan_bound) const {
    {
        std::lock_guard<std::mutex> lk(d_->cache_mu);
        if (d_->primitives_cache) {
            std::vector<Element> out;
            for (const Mat& c : *d_->primitives_cache) out.push_back(element(c));
            return out;
        }
    }
    std::vector<Element> es = primitives_impl(*this, scan_bound);
    // Postconditions: pairwise orthogonal idempotents summing to the unit.
    Element sum = zero();
    for (size_t i = 0; i < es.size(); ++i) {
        if (mul(es[i], es[i]) != es[i]) throw std::logic_error("primitive_idempotents: not idempotent");
        for (size_t j = 0; j < es.size(); ++j)
            if (i != j && !mul(es[i], es[j]).is_zero())
                throw std::logic_error("primitive_idempotents: not orthogonal");
        sum = sum + es[i];
    }
    if (sum != unit()) throw std::logic_error("primitive_idempotents: do not sum to 1");
    {
        std::lock_guard<std::mutex> lk(d_->cache_mu);
        std::vector<Mat> cs;
        for (const Element& e : es) cs.push_back(e.coords());
        d_->primitives_cache = std::move(cs);
    }
    return es;
}

}  // namespace alg
