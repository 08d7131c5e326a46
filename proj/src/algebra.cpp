#include "algebra.hpp"

#include <stdexcept>

namespace alg {

using gfp::add;
using gfp::mul;
using gfp::norm;
using gfp::sub;

int Algebra::p() const { return d_->p; }
int Algebra::dim() const { return d_->dim; }
Algebra::Kind Algebra::kind() const { return d_->kind; }
const std::vector<std::vector<std::vector<uint8_t>>>& Algebra::table() const { return d_->table; }
const std::vector<uint8_t>& Algebra::unit_coords() const { return d_->unit; }

namespace {

Mat coords_to_row(const std::vector<uint8_t>& v, int p) { return Mat::row_vector(v, p); }

void build_regular_mats(Algebra::Data& d) {
    d.left_mats.clear();
    d.right_mats.clear();
    const int n = d.dim, p = d.p;
    for (int i = 0; i < n; ++i) {
        Mat lm(n, n, p);  // row j = coords of b_i * b_j
        Mat rm(n, n, p);  // row j = coords of b_j * b_i
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                lm.set(j, k, d.table[i][j][k]);
                rm.set(j, k, d.table[j][i][k]);
            }
        d.left_mats.push_back(std::move(lm));
        d.right_mats.push_back(std::move(rm));
    }
}

void validate_algebra(const Algebra::Data& d) {
    const int n = d.dim;
    if (n < 1) throw std::invalid_argument("algebra: dim must be >= 1");
    if (n > gfp::kMaxDim) throw gfp::guard_error("algebra: dimension cap exceeded");
    if (!gfp::supported_prime(d.p)) throw std::invalid_argument("algebra: unsupported modulus");
    if (static_cast<int>(d.unit.size()) != n) throw std::invalid_argument("algebra: unit length mismatch");
    if (static_cast<int>(d.table.size()) != n) throw std::invalid_argument("algebra: table shape");
    for (auto& row : d.table) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("algebra: table shape");
        for (auto& e : row)
            if (static_cast<int>(e.size()) != n) throw std::invalid_argument("algebra: table shape");
    }

    // Unit laws: 1 * b_i = b_i * 1 = b_i, checked through the regular mats.
    Mat u = coords_to_row(d.unit, d.p);
    for (int i = 0; i < n; ++i) {
        Mat bi(1, n, d.p);
        bi.set(0, i, 1);
        if (u * d.left_mats[i] != bi) throw std::invalid_argument("algebra: b_i * 1 != b_i");
        if (u * d.right_mats[i] != bi) throw std::invalid_argument("algebra: 1 * b_i != b_i");
    }

    // Associativity on all basis pairs: left_mul(b_i b_j) == composition.
    // In row convention, row(x * b_j * ... ) composes as x * right(b_i) * right(b_j),
    // and b_i b_j = sum_k c_ijk b_k, so:
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat expect(n, n, d.p);
            for (int k = 0; k < n; ++k) {
                int c = d.table[i][j][k];
                if (!c) continue;
                expect = expect + d.right_mats[k].scaled(c);
            }
            if (d.right_mats[i] * d.right_mats[j] != expect)
                throw std::invalid_argument("algebra: associativity fails on basis pair");
        }
}

}  // namespace

Algebra Algebra::from_table(int p, int dim, std::vector<std::vector<std::vector<uint8_t>>> mul_table,
                            std::vector<uint8_t> unit) {
    auto d = std::make_shared<Data>();
    d->p = p;
    d->dim = dim;
    d->table = std::move(mul_table);
    d->unit = std::move(unit);
    for (auto& row : d->table)
        for (auto& e : row)
            for (auto& x : e) x = static_cast<uint8_t>(norm(x, p));
    for (auto& x : d->unit) x = static_cast<uint8_t>(norm(x, p));
    build_regular_mats(*d);
    validate_algebra(*d);
    return Algebra(std::move(d));
}

Element Algebra::element(const std::vector<uint8_t>& coords) const {
    if (static_cast<int>(coords.size()) != dim()) throw std::invalid_argument("element: coordinate length");
    return Element(*this, coords_to_row(coords, p()));
}

Element Algebra::element(const Mat& coords) const {
    if (coords.rows() != 1 || coords.cols() != dim() || coords.modulus() != p())
        throw std::invalid_argument("element: coordinate shape");
    return Element(*this, coords);
}

Element Algebra::zero() const { return Element(*this, Mat(1, dim(), p())); }
Element Algebra::unit() const { return Element(*this, coords_to_row(d_->unit, p())); }

Element Algebra::basis_element(int i) const {
    Mat m(1, dim(), p());
    m.set(0, i, 1);
    return Element(*this, m);
}

Mat Algebra::left_mul(const Element& a) const {
    Mat m(dim(), dim(), p());
    for (int i = 0; i < dim(); ++i) {
        int c = a.coords().at(0, i);
        if (!c) continue;
        m = m + d_->left_mats[i].scaled(c);
    }
    return m;
}

Mat Algebra::right_mul(const Element& a) const {
    Mat m(dim(), dim(), p());
    for (int i = 0; i < dim(); ++i) {
        int c = a.coords().at(0, i);
        if (!c) continue;
        m = m + d_->right_mats[i].scaled(c);
    }
    return m;
}

Mat Algebra::regular_action(const Element& a) const { return right_mul(a); }

Element Algebra::mul(const Element& a, const Element& b) const {
    if (!a.algebra().same(*this) || !b.algebra().same(*this))
        throw std::invalid_argument("mul: algebra mismatch");
    return Element(*this, a.coords() * right_mul(b));
}

std::optional<Element> Algebra::try_inverse(const Element& a) const {
    // Solve x * a = 1 on rows, then confirm a * x = 1.
    auto x = gfp::solve(right_mul(a).transpose(), unit().coords().transpose());
    if (!x) return std::nullopt;
    Element cand(*this, x->transpose());
    if (mul(a, cand) != unit() || mul(cand, a) != unit()) return std::nullopt;
    return cand;
}

std::optional<Element> Algebra::is_regular_element(const Element& a) const {
    // a x a = a is linear in x: row(x) * left_mul(a) * right_mul(a)... careful:
    // a * (x * a): first right-multiply x by a, then left-multiply by a.
    Mat op = right_mul(a) * left_mul(a);
    auto x = gfp::solve(op.transpose(), a.coords().transpose());
    if (!x) return std::nullopt;
    Element w(*this, x->transpose());
    if (mul(mul(a, w), a) != a) throw std::logic_error("is_regular_element: witness check failed");
    return w;
}

Element::Element(Algebra a, Mat coords) : alg_(std::move(a)), coords_(std::move(coords)) {}

bool Element::operator==(const Element& o) const {
    return alg_.same(o.alg_) && coords_ == o.coords_;
}

Element operator+(const Element& a, const Element& b) {
    if (!a.algebra().same(b.algebra())) throw std::invalid_argument("element +: algebra mismatch");
    return Element(a.algebra(), a.coords() + b.coords());
}
Element operator-(const Element& a, const Element& b) {
    if (!a.algebra().same(b.algebra())) throw std::invalid_argument("element -: algebra mismatch");
    return Element(a.algebra(), a.coords() - b.coords());
}
Element operator*(const Element& a, const Element& b) { return a.algebra().mul(a, b); }

Subspace::Subspace(Algebra a, const Mat& rows) : alg_(std::move(a)), basis_(gfp::row_space(rows)) {
    if (rows.cols() != alg_.dim() && rows.rows() > 0)
        throw std::invalid_argument("subspace: width mismatch");
    if (rows.rows() == 0) basis_ = Mat(0, alg_.dim(), alg_.p());
}

bool Subspace::contains(const Element& x) const {
    return gfp::rowspace_contains(basis_, x.coords());
}

Morphism::Morphism(Algebra source, Algebra target, Mat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
    if (m_.rows() != src_.dim() || m_.cols() != tgt_.dim() || m_.modulus() != src_.p() || src_.p() != tgt_.p())
        throw std::invalid_argument("morphism: matrix shape/modulus mismatch");
    // Unit preservation.
    if (src_.unit().coords() * m_ != tgt_.unit().coords())
        throw std::invalid_argument("morphism: does not preserve unit");
    // Multiplicativity on all basis pairs.
    for (int i = 0; i < src_.dim(); ++i)
        for (int j = 0; j < src_.dim(); ++j) {
            Element bi = src_.basis_element(i), bj = src_.basis_element(j);
            Element lhs = tgt_.element(src_.mul(bi, bj).coords() * m_);
            Element rhs = tgt_.mul(tgt_.element(bi.coords() * m_), tgt_.element(bj.coords() * m_));
            if (lhs != rhs) throw std::invalid_argument("morphism: not multiplicative");
        }
}

Element Morphism::apply(const Element& x) const {
    if (!x.algebra().same(src_)) throw std::invalid_argument("morphism: element from wrong algebra");
    return tgt_.element(x.coords() * m_);
}

bool Morphism::is_injective() const { return gfp::rank(m_) == src_.dim(); }

// ---------------------------------------------------------------------------
// Factories

Algebra matrix_algebra(int p, int n) {
    if (n < 1) throw std::invalid_argument("matrix_algebra: n >= 1");
    const int dim = n * n;
    auto idx = [n](int i, int j) { return i * n + j; };
    std::vector<std::vector<std::vector<uint8_t>>> t(dim, std::vector<std::vector<uint8_t>>(dim, std::vector<uint8_t>(dim, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (j == k) t[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
    std::vector<uint8_t> unit(dim, 0);
    for (int i = 0; i < n; ++i) unit[idx(i, i)] = 1;
    Algebra a = Algebra::from_table(p, dim, std::move(t), std::move(unit));
    a.data()->kind = Algebra::Kind::matrix_algebra;
    a.data()->matrix_n = n;
    return a;
}

UpperTriangular upper_triangular(int p, int n) {
    if (n < 1) throw std::invalid_argument("upper_triangular: n >= 1");
    // basis pairs (i,j), i <= j, ordered by i then j
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
    const int dim = static_cast<int>(pairs.size());
    auto find = [&pairs](int i, int j) {
        for (size_t k = 0; k < pairs.size(); ++k)
            if (pairs[k].first == i && pairs[k].second == j) return static_cast<int>(k);
        return -1;
    };
    std::vector<std::vector<std::vector<uint8_t>>> t(dim, std::vector<std::vector<uint8_t>>(dim, std::vector<uint8_t>(dim, 0)));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            auto [i, j] = pairs[a];
            auto [k, l] = pairs[b];
            if (j == k) t[a][b][find(i, l)] = 1;
        }
    std::vector<uint8_t> unit(dim, 0);
    for (int i = 0; i < n; ++i) unit[find(i, i)] = 1;
    Algebra s = Algebra::from_table(p, dim, std::move(t), std::move(unit));

    Algebra m = matrix_algebra(p, n);
    Mat inc(dim, n * n, p);
    for (int a = 0; a < dim; ++a) inc.set(a, pairs[a].first * n + pairs[a].second, 1);
    return UpperTriangular{s, Morphism(s, m, inc)};
}

Algebra truncated_polynomial_algebra(int p, int d) {
    if (d < 1) throw std::invalid_argument("truncated_polynomial_algebra: d >= 1");
    std::vector<std::vector<std::vector<uint8_t>>> t(d, std::vector<std::vector<uint8_t>>(d, std::vector<uint8_t>(d, 0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i + j < d) t[i][j][i + j] = 1;
    std::vector<uint8_t> unit(d, 0);
    unit[0] = 1;
    return Algebra::from_table(p, d, std::move(t), std::move(unit));
}

Product direct_product(const Algebra& a, const Algebra& b) {
    if (a.p() != b.p()) throw std::invalid_argument("direct_product: modulus mismatch");
    const int da = a.dim(), db = b.dim(), dim = da + db, p = a.p();
    std::vector<std::vector<std::vector<uint8_t>>> t(dim, std::vector<std::vector<uint8_t>>(dim, std::vector<uint8_t>(dim, 0)));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < da; ++k) t[i][j][k] = a.table()[i][j][k];
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < db; ++k) t[da + i][da + j][da + k] = b.table()[i][j][k];
    std::vector<uint8_t> unit(dim, 0);
    for (int i = 0; i < da; ++i) unit[i] = a.unit_coords()[i];
    for (int i = 0; i < db; ++i) unit[da + i] = b.unit_coords()[i];
    Algebra prod = Algebra::from_table(p, dim, std::move(t), std::move(unit));
    prod.data()->kind = Algebra::Kind::product;
    prod.data()->factor_a = a.data();
    prod.data()->factor_b = b.data();

    Mat pa(dim, da, p), pb(dim, db, p);
    for (int i = 0; i < da; ++i) pa.set(i, i, 1);
    for (int i = 0; i < db; ++i) pb.set(da + i, i, 1);
    Mat ia(da, dim, p), ib(db, dim, p);
    for (int i = 0; i < da; ++i) ia.set(i, i, 1);
    for (int i = 0; i < db; ++i) ib.set(i, da + i, 1);

    Mat ea(1, dim, p), eb(1, dim, p);
    for (int i = 0; i < da; ++i) ea.set(0, i, a.unit_coords()[i]);
    for (int i = 0; i < db; ++i) eb.set(0, da + i, b.unit_coords()[i]);

    return Product{prod, Morphism(prod, a, pa), Morphism(prod, b, pb), ia, ib,
                   prod.element(ea), prod.element(eb)};
}

Algebra opposite_algebra(const Algebra& a) {
    const int n = a.dim();
    std::vector<std::vector<std::vector<uint8_t>>> t(n, std::vector<std::vector<uint8_t>>(n, std::vector<uint8_t>(n, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = a.table()[j][i];
    Algebra op = Algebra::from_table(a.p(), n, std::move(t), a.unit_coords());
    op.data()->kind = Algebra::Kind::opposite;
    op.data()->base = a.data();
    return op;
}

Algebra quotient_by_ideal(const Algebra& a, const Subspace& ideal) {
    if (!ideal.algebra().same(a)) throw std::invalid_argument("quotient_by_ideal: wrong algebra");
    const Mat& w = ideal.basis();
    // Two-sided ideal check.
    for (int i = 0; i < a.dim(); ++i) {
        if (!gfp::rowspace_contains(w, w * a.data()->left_mats[i]) ||
            !gfp::rowspace_contains(w, w * a.data()->right_mats[i]))
            throw std::invalid_argument("quotient_by_ideal: not a two-sided ideal");
    }
    const int p = a.p(), n = a.dim();
    std::vector<bool> is_piv(n, false);
    gfp::Echelon e = gfp::rref(w);
    for (int c : e.pivots) is_piv[c] = true;
    std::vector<int> rest;
    for (int c = 0; c < n; ++c)
        if (!is_piv[c]) rest.push_back(c);
    const int q = static_cast<int>(rest.size());
    if (q == 0) throw std::invalid_argument("quotient_by_ideal: quotient must be unital (ideal is proper)");

    // reduce-then-project matrix n -> q
    auto project = [&](const Mat& v) {
        Mat r = v;
        for (size_t i = 0; i < e.pivots.size(); ++i) {
            int c = r.at(0, e.pivots[i]);
            if (!c) continue;
            for (int j = 0; j < n; ++j) r.set(0, j, sub(r.at(0, j), mul(c, e.reduced.at(static_cast<int>(i), j), p), p));
        }
        Mat out(1, q, p);
        for (int j = 0; j < q; ++j) out.set(0, j, r.at(0, rest[j]));
        return out;
    };

    std::vector<std::vector<std::vector<uint8_t>>> t(q, std::vector<std::vector<uint8_t>>(q, std::vector<uint8_t>(q, 0)));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            Element prod = a.mul(a.basis_element(rest[i]), a.basis_element(rest[j]));
            Mat pr = project(prod.coords());
            for (int k = 0; k < q; ++k) t[i][j][k] = pr.at(0, k);
        }
    Mat pu = project(a.unit().coords());
    std::vector<uint8_t> unit(q);
    for (int k = 0; k < q; ++k) unit[k] = pu.at(0, k);
    return Algebra::from_table(p, q, std::move(t), std::move(unit));
}

}  // namespace alg
