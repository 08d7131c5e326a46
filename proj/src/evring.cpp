#include "evring.hpp"

namespace evr {

struct Ring::Data {
    Algebra t, s;
    Morphism iota;
    std::optional<bool> left_flat;
    Mat jt, js;  // radical bases, computed once

    mutable std::mutex mu;
    mutable std::map<int, std::shared_ptr<const Truncation>> truncations;
};

bool Elem::is_zero() const {
    if (!tail_.is_zero()) return false;
    for (const Mat& h : head_)
        if (!h.is_zero()) return false;
    return true;
}

bool Elem::operator==(const Elem& o) const {
    return ring_ == o.ring_ && head_ == o.head_ && tail_ == o.tail_;
}

Ring Ring::create(Algebra t, Algebra s, Morphism iota) {
    if (!iota.source().same(s) || !iota.target().same(t))
        throw std::invalid_argument("evr::Ring: iota must map S into T");
    if (!iota.is_injective()) throw std::invalid_argument("evr::Ring: iota must be injective");
    auto d = std::make_shared<Data>();
    d->t = t;
    d->s = s;
    d->iota = iota;
    d->jt = t.jacobson_radical().basis();
    d->js = s.jacobson_radical().basis();

    // Left flatness of T over S: T is a left S-module via iota, i.e. a right
    // module over the opposite algebra; projectivity there is the certificate.
    try {
        Algebra sop = alg::opposite_algebra(s);
        std::vector<Mat> act;
        for (int i = 0; i < s.dim(); ++i) act.push_back(t.left_mul(iota.apply(s.basis_element(i))));
        fdmod::Module m = fdmod::Module::from_action(sop, t.dim(), std::move(act));
        d->left_flat = fdmod::is_projective(m);
    } catch (const gfp::guard_error&) {
        d->left_flat = std::nullopt;
    }
    return Ring(std::move(d));
}

const Algebra& Ring::t_algebra() const { return d_->t; }
const Algebra& Ring::s_algebra() const { return d_->s; }
const Morphism& Ring::iota() const { return d_->iota; }
std::optional<bool> Ring::left_flat_cert() const { return d_->left_flat; }

bool Ring::owns(const Elem& a) const { return a.ring_handle().get() == static_cast<const void*>(d_.get()); }

Elem Ring::make(std::vector<Mat> head, Mat tail) const {
    Mat generic = tail * d_->iota.matrix();
    while (!head.empty() && head.back() == generic) head.pop_back();
    Elem e;
    e.ring_ = std::shared_ptr<const void>(d_, d_.get());
    e.head_ = std::move(head);
    e.tail_ = std::move(tail);
    return e;
}

namespace {
void check(const Ring& r, const Elem& a) {
    if (!r.owns(a)) throw std::invalid_argument("evr: element belongs to a different ring");
}
}  // namespace

Elem Ring::zero() const { return make({}, Mat(1, d_->s.dim(), d_->s.p())); }

Elem Ring::one() const { return make({}, d_->s.unit().coords()); }

Elem Ring::constant(const Element& s) const {
    if (!s.algebra().same(d_->s)) throw std::invalid_argument("constant: element not in S");
    return make({}, s.coords());
}

Elem Ring::from_head_tail(const std::vector<Element>& head, const Element& tail) const {
    if (!tail.algebra().same(d_->s)) throw std::invalid_argument("from_head_tail: tail not in S");
    std::vector<Mat> h;
    for (const Element& x : head) {
        if (!x.algebra().same(d_->t)) throw std::invalid_argument("from_head_tail: head entry not in T");
        h.push_back(x.coords());
    }
    return make(std::move(h), tail.coords());
}

Elem Ring::from_raw(std::vector<Mat> head, Mat tail) const {
    for (const Mat& h : head)
        if (h.rows() != 1 || h.cols() != d_->t.dim() || h.modulus() != d_->t.p())
            throw std::invalid_argument("from_raw: head entry shape");
    if (tail.rows() != 1 || tail.cols() != d_->s.dim()) throw std::invalid_argument("from_raw: tail shape");
    return make(std::move(head), std::move(tail));
}

Elem Ring::e(int i) const {
    if (i < 1) throw std::invalid_argument("e(i): i >= 1");
    std::vector<Mat> head(static_cast<size_t>(i), Mat(1, d_->t.dim(), d_->t.p()));
    head.back() = d_->t.unit().coords();
    return make(std::move(head), Mat(1, d_->s.dim(), d_->s.p()));
}

Element Ring::phi(const Elem& a) const {
    check(*this, a);
    return d_->s.element(a.tail());
}

Element Ring::pi(int i, const Elem& a) const {
    check(*this, a);
    if (i < 1) throw std::invalid_argument("pi: i >= 1");
    if (i <= a.head_len()) return d_->t.element(a.head()[i - 1]);
    return d_->t.element(a.tail() * d_->iota.matrix());
}

Elem Ring::add(const Elem& a, const Elem& b) const {
    check(*this, a);
    check(*this, b);
    int n = std::max(a.head_len(), b.head_len());
    std::vector<Mat> head;
    for (int i = 1; i <= n; ++i) head.push_back(pi(i, a).coords() + pi(i, b).coords());
    return make(std::move(head), a.tail() + b.tail());
}

Elem Ring::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Ring::neg(const Elem& a) const {
    check(*this, a);
    std::vector<Mat> head;
    for (const Mat& h : a.head()) head.push_back(h.scaled(-1));
    return make(std::move(head), a.tail().scaled(-1));
}

Elem Ring::mul(const Elem& a, const Elem& b) const {
    check(*this, a);
    check(*this, b);
    int n = std::max(a.head_len(), b.head_len());
    std::vector<Mat> head;
    for (int i = 1; i <= n; ++i) head.push_back(d_->t.mul(pi(i, a), pi(i, b)).coords());
    return make(std::move(head), d_->s.mul(phi(a), phi(b)).coords());
}

std::optional<Elem> Ring::try_inverse(const Elem& a) const {
    check(*this, a);
    std::vector<Mat> head;
    for (int i = 1; i <= a.head_len(); ++i) {
        auto inv = d_->t.try_inverse(pi(i, a));
        if (!inv) return std::nullopt;
        head.push_back(inv->coords());
    }
    auto tinv = d_->s.try_inverse(phi(a));
    if (!tinv) return std::nullopt;
    Elem out = make(std::move(head), tinv->coords());
    if (mul(a, out) != one() || mul(out, a) != one()) throw std::logic_error("try_inverse: verification failed");
    return out;
}

bool Ring::in_jacobson(const Elem& a) const {
    check(*this, a);
    for (const Mat& h : a.head())
        if (!gfp::rowspace_contains(d_->jt, h)) return false;
    if (!gfp::rowspace_contains(d_->js, a.tail())) return false;
    return gfp::rowspace_contains(d_->jt, a.tail() * d_->iota.matrix());
}

std::optional<Elem> Ring::jacobson_refutation_oracle(const Elem& a, int trials, uint64_t seed) const {
    check(*this, a);
    int done = 0;
    auto refutes = [&](const Elem& b) { return !try_inverse(sub(one(), mul(a, b))).has_value(); };

    // Structured family: all single-slot values when T is small enough.
    uint64_t tcount = 1;
    for (int i = 0; i < d_->t.dim() && tcount <= 4096; ++i) tcount *= static_cast<uint64_t>(d_->t.p());
    if (tcount <= 4096) {
        for (int slot = 1; slot <= a.head_len() + 2 && done < trials; ++slot) {
            std::vector<uint8_t> v(d_->t.dim(), 0);
            while (gfp::next_vector(v, d_->t.p()) && done < trials) {
                std::vector<Mat> head(static_cast<size_t>(slot), Mat(1, d_->t.dim(), d_->t.p()));
                head.back() = Mat::row_vector(v, d_->t.p());
                Elem b = make(std::move(head), Mat(1, d_->s.dim(), d_->s.p()));
                ++done;
                if (refutes(b)) return b;
            }
        }
    }
    // Structured family: all constants when S is small enough.
    uint64_t scount = 1;
    for (int i = 0; i < d_->s.dim() && scount <= 4096; ++i) scount *= static_cast<uint64_t>(d_->s.p());
    if (scount <= 4096) {
        std::vector<uint8_t> v(d_->s.dim(), 0);
        while (gfp::next_vector(v, d_->s.p()) && done < trials) {
            Elem b = make({}, Mat::row_vector(v, d_->s.p()));
            ++done;
            if (refutes(b)) return b;
        }
    }
    // Seeded random elements.
    std::mt19937_64 rng(seed);
    while (done < trials) {
        Elem b = random_element(a.head_len() + 2, rng);
        ++done;
        if (refutes(b)) return b;
    }
    return std::nullopt;
}

std::optional<Elem> Ring::is_regular_element(const Elem& a) const {
    check(*this, a);
    std::vector<Mat> head;
    for (int i = 1; i <= a.head_len(); ++i) {
        auto w = d_->t.is_regular_element(pi(i, a));
        if (!w) return std::nullopt;
        head.push_back(w->coords());
    }
    auto tw = d_->s.is_regular_element(phi(a));
    if (!tw) return std::nullopt;
    Elem x = make(std::move(head), tw->coords());
    if (mul(mul(a, x), a) != a) throw std::logic_error("is_regular_element: witness check failed");
    return x;
}

Elem Ring::random_element(int max_head, std::mt19937_64& rng) const {
    int hl = max_head > 0 ? static_cast<int>(rng() % static_cast<uint64_t>(max_head + 1)) : 0;
    std::vector<Mat> head;
    for (int i = 0; i < hl; ++i) {
        Mat h(1, d_->t.dim(), d_->t.p());
        for (int c = 0; c < d_->t.dim(); ++c) h.set(0, c, static_cast<int>(rng() % d_->t.p()));
        head.push_back(std::move(h));
    }
    Mat tail(1, d_->s.dim(), d_->s.p());
    for (int c = 0; c < d_->s.dim(); ++c) tail.set(0, c, static_cast<int>(rng() % d_->s.p()));
    return make(std::move(head), std::move(tail));
}

std::shared_ptr<const Truncation> Ring::truncation(int k) const {
    if (k < 1) throw std::invalid_argument("truncation: k >= 1");
    {
        std::lock_guard<std::mutex> lk(d_->mu);
        auto it = d_->truncations.find(k);
        if (it != d_->truncations.end()) return it->second;
    }
    const Algebra& t = d_->t;
    const Algebra& s = d_->s;
    const int p = t.p(), dt = t.dim(), ds = s.dim();

    Algebra acc = t;
    for (int i = 1; i < k; ++i) acc = alg::direct_product(acc, t).algebra;
    Algebra rk = alg::direct_product(acc, s).algebra;
    const int dim = k * dt + ds;

    auto tr = std::make_shared<Truncation>();
    tr->k = k;
    tr->algebra = rk;

    Mat ps(dim, ds, p);
    for (int i = 0; i < ds; ++i) ps.set(k * dt + i, i, 1);
    tr->proj_s = Morphism(rk, s, ps);
    for (int b = 0; b < k; ++b) {
        Mat pt(dim, dt, p);
        for (int i = 0; i < dt; ++i) pt.set(b * dt + i, i, 1);
        tr->proj_t.push_back(Morphism(rk, t, pt));
    }
    Mat sec(ds, dim, p);
    for (int r = 0; r < ds; ++r) {
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < dt; ++c) sec.set(r, b * dt + c, d_->iota.matrix().at(r, c));
        sec.set(r, k * dt + r, 1);
    }
    tr->section = Morphism(s, rk, sec);

    for (int b = 0; b < k; ++b) {
        Mat e(1, dim, p);
        for (int i = 0; i < dt; ++i) e.set(0, b * dt + i, t.unit_coords()[i]);
        tr->block_unit.push_back(rk.element(e));
    }
    Mat ideal(k * dt, dim, p);
    for (int i = 0; i < k * dt; ++i) ideal.set(i, i, 1);
    tr->ideal_basis = ideal;

    // Spot-verify that rho is a homomorphism on seeded pairs.
    std::mt19937_64 rng(0x7a0c + static_cast<uint64_t>(k));
    for (int trial = 0; trial < 16; ++trial) {
        Elem a = random_element(3, rng), b = random_element(3, rng);
        if (tr->rho(mul(a, b)) != rk.mul(tr->rho(a), tr->rho(b)) ||
            tr->rho(add(a, b)) != rk.element(tr->rho(a).coords() + tr->rho(b).coords()))
            throw std::logic_error("truncation: rho fails to be a homomorphism");
    }
    if (tr->rho(one()) != rk.unit()) throw std::logic_error("truncation: rho(1) != 1");

    std::lock_guard<std::mutex> lk(d_->mu);
    auto [it, inserted] = d_->truncations.emplace(k, tr);
    (void)inserted;
    return it->second;
}

Element Truncation::rho(const Elem& a) const {
    // (iota(tail), ..., iota(tail), tail), then overwrite real head slots.
    Mat coords = a.tail() * section.matrix();
    const int dt = proj_t[0].target().dim();
    for (int b = 0; b < k && b < a.head_len(); ++b)
        for (int c = 0; c < dt; ++c) coords.set(0, b * dt + c, a.head()[b].at(0, c));
    return algebra.element(coords);
}

Element Truncation::slot_element(int i, const Element& t) const {
    if (i < 1 || i > k) throw std::invalid_argument("slot_element: slot out of range");
    const int dt = proj_t[0].target().dim();
    Mat coords(1, algebra.dim(), algebra.p());
    for (int c = 0; c < dt; ++c) coords.set(0, (i - 1) * dt + c, t.coords().at(0, c));
    return algebra.element(coords);
}

Element Truncation::s_element(const Element& s) const {
    const int dt = proj_t[0].target().dim(), ds = proj_s.target().dim();
    Mat coords(1, algebra.dim(), algebra.p());
    for (int c = 0; c < ds; ++c) coords.set(0, k * dt + c, s.coords().at(0, c));
    return algebra.element(coords);
}

Ring example_ring_a() {
    auto ut = alg::upper_triangular(2, 2);
    return Ring::create(ut.inclusion.target(), ut.algebra, ut.inclusion);
}

Ring battery_ring_small() {
    Algebra t = alg::upper_triangular(2, 2).algebra;
    Algebra f2 = alg::matrix_algebra(2, 1);
    Mat m(1, 3, 2);
    for (int c = 0; c < 3; ++c) m.set(0, c, t.unit_coords()[c]);
    return Ring::create(t, f2, Morphism(f2, t, m));
}

}  // namespace evr
