#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "evmodule.hpp"

namespace evm {

using alg::Element;
using fdmod::Map;
using fdmod::Module;
using fdmod::Submodule;

struct Pullback::Data {
    FpModule n;
    Module v, l;
    Map g;
    Mat x_basis;
    fdmod::SubmoduleView xview;  // X as an abstract S-module with embedding into L

    mutable std::mutex mu;
    mutable std::map<int, PullbackLevel> levels;
};

Pullback Pullback::create(FpModule n, Module l, Map g) {
    auto d = std::make_shared<Data>();
    d->n = std::move(n);
    const auto& tail = d->n.tail_view();
    if (!g.target().same(tail.module))
        throw std::invalid_argument("pullback: g must map onto the tail quotient of N");
    if (!g.source().same(l)) throw std::invalid_argument("pullback: g must start at L");
    if (!g.is_onto()) throw std::invalid_argument("pullback: g must be onto");
    d->v = tail.module;
    d->l = std::move(l);
    d->g = std::move(g);
    d->x_basis = d->g.kernel();
    d->xview = fdmod::submodule_module(d->l, Submodule(d->l, d->x_basis));
    return Pullback(std::move(d));
}

const FpModule& Pullback::n() const { return d_->n; }
const Module& Pullback::v() const { return d_->v; }
const Module& Pullback::l() const { return d_->l; }
const Map& Pullback::g() const { return d_->g; }
const Mat& Pullback::x_basis() const { return d_->x_basis; }
const Module& Pullback::x_module() const { return d_->xview.module; }

namespace {

Mat block_diag(const Mat& block, int count, int p) {
    Mat out(count * block.rows(), count * block.cols(), p);
    for (int b = 0; b < count; ++b)
        for (int r = 0; r < block.rows(); ++r)
            for (int c = 0; c < block.cols(); ++c) out.set(b * block.rows() + r, b * block.cols() + c, block.at(r, c));
    return out;
}

Mat columns(const Mat& m, int from, int to) {
    Mat out(m.rows(), to - from, m.modulus());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = from; c < to; ++c) out.set(r, c - from, m.at(r, c));
    return out;
}

// Sum of the images of the T-block idempotents: the M I_k part.
Mat ideal_part(const Module& m, const evr::Truncation& tr) {
    Mat out(0, m.dim(), m.algebra().p());
    for (int i = 0; i < tr.k; ++i) out = gfp::rowspace_sum(out, gfp::row_space(m.action_of(tr.block_unit[i])));
    return out;
}

}  // namespace

const PullbackLevel& Pullback::level(int k) const {
    {
        std::lock_guard<std::mutex> lk(d_->mu);
        auto it = d_->levels.find(k);
        if (it != d_->levels.end()) return it->second;
    }
    PullbackLevel lv;
    lv.trunc = d_->n.ring().truncation(k);
    const auto& tr = *lv.trunc;
    lv.n_k = d_->n.truncate(k);
    lv.v_k = fdmod::restrict(tr.proj_s, d_->v);
    lv.l_k = fdmod::restrict(tr.proj_s, d_->l);
    lv.x_k = fdmod::restrict(tr.proj_s, d_->xview.module);

    const int p = tr.algebra.p();
    const int gens = d_->n.gens();
    const auto& tail = d_->n.tail_view();

    // f_k: lift a class to R_k^gens, project every generator entry to S,
    // then drop into V = S^gens / tail relations.
    Mat pr = block_diag(tr.proj_s.matrix(), gens, p);
    Mat fmat = lv.n_k.lift * pr * tail.free_to_module;
    Mat wk = gfp::left_kernel(lv.n_k.free_to_module);
    if (!(wk.rows() == 0 || (wk * pr * tail.free_to_module).is_zero()))
        throw std::logic_error("pullback: tail map not well-defined on the truncation");
    lv.f_k = Map(lv.n_k.module, lv.v_k, fmat);
    lv.g_k = Map(lv.l_k, lv.v_k, d_->g.matrix());

    // L' = ker( N_k + L_k -> V_k ), (x, y) |-> f(x) - g(y).
    lv.basis = gfp::left_kernel(Mat::vstack(fmat, d_->g.matrix().scaled(-1)));
    auto sum = fdmod::direct_sum(lv.n_k.module, lv.l_k);
    lv.lprime = fdmod::submodule_module(sum.module, Submodule(sum.module, lv.basis)).module;

    const int nk = lv.n_k.module.dim(), ldim = d_->l.dim(), xdim = d_->x_basis.rows();
    if (lv.lprime.dim() != nk + xdim) throw std::logic_error("pullback: dim L' != dim N_k + dim X");

    lv.pi1 = Map(lv.lprime, lv.n_k.module, columns(lv.basis, 0, nk));
    lv.pi2 = Map(lv.lprime, lv.l_k, columns(lv.basis, nk, nk + ldim));

    // eps2: X -> L', y |-> (0, y).
    Mat xin = Mat::hstack(Mat(xdim, nk, p), d_->x_basis);
    auto e2 = gfp::coordinates_in_rowspace(lv.basis, xin);
    if (!e2) throw std::logic_error("pullback: X does not embed in L'");
    lv.eps2 = Map(lv.x_k, lv.lprime, *e2);

    // eps1: ker f_k -> L', x |-> (x, 0); ker f_k must be the N_k I_k part.
    Mat kerf = lv.f_k.kernel();
    if (kerf != ideal_part(lv.n_k.module, tr)) throw std::logic_error("pullback: ker f_k != N_k I_k");
    auto e1 = gfp::coordinates_in_rowspace(lv.basis, Mat::hstack(kerf, Mat(kerf.rows(), ldim, p)));
    if (!e1) throw std::logic_error("pullback: NI does not embed in L'");
    lv.eps1 = *e1;

    // Diagram commutativity on all generators of L'.
    if (lv.pi1.matrix() * fmat != lv.pi2.matrix() * d_->g.matrix())
        throw std::logic_error("pullback: diagram does not commute");

    std::lock_guard<std::mutex> lk(d_->mu);
    return d_->levels.emplace(k, std::move(lv)).first->second;
}

// ---------------------------------------------------------------------------
// Certificate checks

namespace {

std::vector<int> level_range(const Pullback& pb, int depth) {
    int k0 = std::max(1, pb.n().stable_index());
    std::vector<int> ks;
    for (int k = k0; k <= k0 + depth; ++k) ks.push_back(k);
    return ks;
}

CheckResult check_c1(const Pullback& pb) {
    CheckResult r;
    r.name = "C1-premises";
    bool onto = pb.g().is_onto();
    bool kernel_match = pb.x_basis() == pb.g().kernel();
    bool small = fdmod::is_small(Submodule(pb.l(), pb.x_basis()), pb.l());
    r.pass = onto && kernel_match && small;
    std::ostringstream os;
    os << "g onto=" << onto << " X=ker(g)=" << kernel_match << " X small in L=" << small;
    r.details = os.str();
    return r;
}

CheckResult check_c2(const Pullback& pb, const std::vector<int>& ks) {
    CheckResult r;
    r.name = "C2-flatness";
    std::ostringstream os;
    bool pass = true;

    // Slot components of L' coincide with those of N (through pi1) and are
    // flat over T; the T side is automatic when T is semisimple.
    bool t_semisimple = pb.n().ring().t_algebra().jacobson_radical().dim() == 0;
    if (t_semisimple) {
        r.mode = CheckResult::Mode::proven;
        os << "T semisimple; ";
    } else {
        bool flat_t = fdmod::is_projective(pb.n().generic_component());
        for (int i = 1; i <= pb.n().stable_index() && flat_t; ++i)
            flat_t = fdmod::is_projective(pb.n().component(i));
        pass = pass && flat_t;
        os << "components flat over T=" << flat_t << "; ";
    }

    for (int k : ks) {
        const auto& lv = pb.level(k);
        bool ok = true;
        for (int i = 0; i < k; ++i) {
            Mat part = gfp::row_space(lv.lprime.action_of(lv.trunc->block_unit[i]));
            Mat mapped = part * lv.pi1.matrix();
            Mat npart = gfp::row_space(lv.n_k.module.action_of(lv.trunc->block_unit[i]));
            if (gfp::rank(mapped) != part.rows() || gfp::row_space(mapped) != npart) ok = false;
        }
        // tail of L' is L: the ideal part is exactly ker pi2 and pi2 is onto
        Mat wi = ideal_part(lv.lprime, *lv.trunc);
        if (!(wi.rows() == 0 || (wi * lv.pi2.matrix()).is_zero())) ok = false;
        if (lv.lprime.dim() - wi.rows() != pb.l().dim()) ok = false;
        if (!lv.pi2.is_onto()) ok = false;
        r.per_level.push_back(ok);
        pass = pass && ok;
    }
    bool l_flat = fdmod::is_projective(pb.l());
    pass = pass && l_flat;
    os << "L'e_i = Ne_i on all levels, tail(L') = L; L projective over S=" << l_flat;
    r.pass = pass;
    r.details = os.str();
    return r;
}

CheckResult check_c3(const Pullback& pb, const std::vector<int>& ks) {
    CheckResult r;
    r.name = "C3-pi1-onto";
    bool pass = true;
    for (int k : ks) {
        const auto& lv = pb.level(k);
        bool ok = lv.pi1.is_onto();
        // tail-level surjectivity
        ok = ok && gfp::rank(lv.pi1.matrix() * lv.f_k.matrix()) == pb.v().dim();
        // component-level surjectivity
        for (int i = 0; i < k && ok; ++i) {
            Mat part = gfp::row_space(lv.lprime.action_of(lv.trunc->block_unit[i]));
            Mat npart = gfp::row_space(lv.n_k.module.action_of(lv.trunc->block_unit[i]));
            ok = gfp::row_space(part * lv.pi1.matrix()) == npart;
        }
        r.per_level.push_back(ok);
        pass = pass && ok;
    }
    r.pass = pass;
    r.details = "pi1 onto with tail and component surjectivity on all levels";
    return r;
}

CheckResult check_c4(const Pullback& pb, const std::vector<int>& ks) {
    CheckResult r;
    r.name = "C4-kernel";
    bool pass = true;
    for (int k : ks) {
        const auto& lv = pb.level(k);
        Mat ker = lv.pi1.kernel();
        Mat eps = gfp::row_space(lv.eps2.matrix());
        bool ok = ker == eps && ker.rows() == pb.x_basis().rows();
        r.per_level.push_back(ok);
        pass = pass && ok;
    }
    r.pass = pass;
    std::ostringstream os;
    os << "ker pi1 = eps2(X) with dim = " << pb.x_basis().rows() << " on all levels";
    r.details = os.str();
    return r;
}

CheckResult check_c5(const Pullback& pb, const std::vector<int>& ks, bool c1_pass) {
    CheckResult r;
    r.name = "C5-smallness";
    r.mode = c1_pass ? CheckResult::Mode::proven : CheckResult::Mode::exhaustive;
    bool pass = true;
    int brute_runs = 0;
    for (int k : ks) {
        const auto& lv = pb.level(k);
        Mat eps = gfp::row_space(lv.eps2.matrix());
        bool ok = gfp::rowspace_contains(fdmod::radical_submodule(lv.lprime).basis(), eps);
        if (lv.lprime.algebra().p() == 2 && lv.lprime.dim() <= 6) {
            ok = ok && fdmod::brute_small(Submodule(lv.lprime, eps), lv.lprime);
            ++brute_runs;
        }
        r.per_level.push_back(ok);
        pass = pass && ok;
    }
    r.pass = pass;
    std::ostringstream os;
    os << (c1_pass ? "proven via the torsion lemma; " : "premises unavailable; ")
       << "radical containment on all levels; brute oracle ran on " << brute_runs << " level(s)";
    r.details = os.str();
    return r;
}

CheckResult check_c6(const Pullback& pb, const std::vector<int>& ks, uint64_t seed) {
    CheckResult r;
    r.name = "C6-minimality";
    auto gmin = fdmod::is_right_minimal(pb.g());
    bool pass = gmin.minimal;
    bool any_sampled = false;
    uint64_t trials_used = 0;

    for (int k : ks) {
        const auto& lv = pb.level(k);
        const int p = lv.lprime.algebra().p();
        const int ell = lv.lprime.dim(), x = pb.x_basis().rows();
        bool ok = true;
        if (x == 0 || ell == 0) {
            r.per_level.push_back(true);
            continue;
        }
        // Endomorphisms h with pi1 h = pi1 are exactly id + Hom(L', eps2 X);
        // such a hom kills L' I, so it factors through the tail of L' and is
        // determined by an S-linear map tail(L') -> X.
        Mat wi = ideal_part(lv.lprime, *lv.trunc);
        auto q = fdmod::quotient_module(lv.lprime, Submodule(lv.lprime, wi));
        Module q_s = fdmod::restrict(lv.trunc->section, q.module);
        auto homs = fdmod::hom_space(q_s, fdmod::restrict(lv.trunc->section, lv.x_k));
        const int v = static_cast<int>(homs.size());

        // Cross-check the factorization on small instances.
        if (ell * x <= 64) {
            auto direct = fdmod::hom_space(lv.lprime, lv.x_k);
            if (static_cast<int>(direct.size()) != v)
                throw std::logic_error("C6: hom factorization mismatch");
        }

        // Invertibility of id + Z via the small side: Z = U W with
        // U = qproj * psi (ell x x), W = eps2 (x x ell), and
        // det(I + U W) != 0 iff det(I_x + W U) != 0.
        Mat g_small = lv.eps2.matrix() * q.projection.matrix();  // x x tau
        std::vector<Mat> gpsi;
        for (const auto& h : homs) {
            // validate the lifted endomorphism once per basis map
            Mat z = q.projection.matrix() * h.matrix() * lv.eps2.matrix();
            Map lifted(lv.lprime, lv.lprime, z);  // ctor validates the intertwining
            (void)lifted;
            if (!(z * lv.pi1.matrix()).is_zero()) throw std::logic_error("C6: lifted map does not fix pi1");
            gpsi.push_back(g_small * h.matrix());
        }
        auto invertible = [&](const std::vector<uint8_t>& coeff) {
            Mat m = Mat::identity(x, p);
            for (int b = 0; b < v; ++b) {
                if (!coeff[b]) continue;
                m = m + gpsi[b].scaled(coeff[b]);
            }
            return gfp::rank(m) == x;
        };
        double log_points = v * std::log2(double(p));
        if (log_points <= 12.0) {
            std::vector<uint8_t> coeff(v, 0);
            do {
                if (!invertible(coeff)) {
                    ok = false;
                    break;
                }
            } while (gfp::next_vector(coeff, p));
        } else {
            any_sampled = true;
            trials_used = 10000;
            std::mt19937_64 rng(seed + static_cast<uint64_t>(k));
            std::vector<uint8_t> coeff(v);
            for (int t = 0; t < 10000 && ok; ++t) {
                for (int b = 0; b < v; ++b) coeff[b] = static_cast<uint8_t>(rng() % p);
                if (!invertible(coeff)) ok = false;
            }
        }
        r.per_level.push_back(ok);
        pass = pass && ok;
    }
    r.mode = any_sampled ? CheckResult::Mode::sampled : CheckResult::Mode::exhaustive;
    r.pass = pass;
    std::ostringstream os;
    os << "g right minimal=" << gmin.minimal << " (mode "
       << (gmin.mode == fdmod::MinimalityVerdict::Mode::proven ? "proven" : "scan")
       << "); endomorphism scan on truncations";
    if (any_sampled) os << " sampled trials=" << trials_used << " seed=" << seed;
    r.details = os.str();
    return r;
}

std::vector<CheckResult> evaluate_checks(const Pullback& pb, int depth) {
    auto ks = level_range(pb, depth);
    std::vector<CheckResult> out;
    out.push_back(check_c1(pb));
    bool c1 = out.back().pass;
    out.push_back(check_c2(pb, ks));
    out.push_back(check_c3(pb, ks));
    out.push_back(check_c4(pb, ks));
    out.push_back(check_c5(pb, ks, c1));
    out.push_back(check_c6(pb, ks, 0xc6c6));
    return out;
}

}  // namespace

bool CoverCertificate::passing() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

const CheckResult& CoverCertificate::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::invalid_argument("certificate: unknown check " + name);
}

CoverCertificate g_flat_cover(const FpModule& n, int depth) {
    auto cover = fdmod::projective_cover(n.tail_view().module);
    Pullback pb = Pullback::create(n, cover.p, cover.pi);
    return CoverCertificate{pb, depth, evaluate_checks(pb, depth)};
}

CoverCertificate g_flat_cover_with(const FpModule& n, const Module& l, const Map& g, int depth) {
    Pullback pb = Pullback::create(n, l, g);
    return CoverCertificate{pb, depth, evaluate_checks(pb, depth)};
}

CoverCertificate verify_certificate(const CoverCertificate& cert, int depth) {
    return CoverCertificate{cert.pullback, depth, evaluate_checks(cert.pullback, depth)};
}

}  // namespace evm
