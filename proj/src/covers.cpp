#include <cmath>
#include <random>

#include "fdmodule.hpp"

namespace fdmod {

namespace {

// Principal indecomposable e A as a submodule of the regular module.
SubmoduleView principal_module(const Algebra& a, const alg::Element& e) {
    Module reg = regular_module(a);
    Mat rows = gfp::row_space(a.left_mul(e));  // spans {e * x}
    return submodule_module(reg, Submodule(reg, rows));
}

}  // namespace

Cover projective_cover(const Module& m) {
    const Algebra& a = m.algebra();
    const int p = a.p();
    if (m.dim() == 0) {
        Module z = zero_module(a);
        return Cover{z, Map(z, m, Mat(0, m.dim(), p))};
    }
    QuotientView topv = top_with_map(m);
    const Module& t = topv.module;

    auto prims = a.primitive_idempotents();
    std::vector<SubmoduleView> principals;
    for (const auto& e : prims) principals.push_back(principal_module(a, e));

    // Greedy: walk hom bases Hom(P_j, M); a composite to the top either adds a
    // full simple summand of top M or nothing, so single passes suffice.
    Mat covered(0, t.dim(), p);
    std::vector<std::pair<size_t, Mat>> chosen;  // (principal index, map matrix into M)
    std::vector<int> counts(prims.size(), 0);
    for (size_t j = 0; j < principals.size(); ++j) {
        for (const Map& phi : hom_space(principals[j].module, m)) {
            Mat img = gfp::row_space(phi.matrix() * topv.projection.matrix());
            if (img.rows() == 0 || gfp::rowspace_contains(covered, img)) continue;
            covered = gfp::rowspace_sum(covered, img);
            chosen.emplace_back(j, phi.matrix());
            ++counts[j];
        }
    }
    if (covered.rows() != t.dim()) throw std::logic_error("projective_cover: top not covered");

    // Multiplicity cross-check: m_j = dim Hom(P_j, top M) / dim End(top P_j).
    for (size_t j = 0; j < principals.size(); ++j) {
        Module sj = top(principals[j].module);
        size_t hom_top = hom_space(principals[j].module, t).size();
        size_t end_dim = hom_space(sj, sj).size();
        if (end_dim == 0 || hom_top % end_dim != 0 || counts[j] != static_cast<int>(hom_top / end_dim))
            throw std::logic_error("projective_cover: multiplicity mismatch");
    }

    // Assemble P = direct sum of the chosen principals; pi stacks the maps.
    Module cover = zero_module(a);
    Mat pim(0, m.dim(), p);
    for (const auto& [j, phim] : chosen) {
        cover = direct_sum(cover, principals[j].module).module;
        pim = Mat::vstack(pim, phim);
    }
    Map pi(cover, m, pim);

    // Verified before returning: onto, superfluous kernel, bijective top.
    if (!pi.is_onto()) throw std::logic_error("projective_cover: not onto");
    Mat radp = radical_submodule(cover).basis();
    if (!gfp::rowspace_contains(radp, pi.kernel())) throw std::logic_error("projective_cover: kernel not superfluous");
    if (top(cover).dim() != t.dim()) throw std::logic_error("projective_cover: top dimension mismatch");
    return Cover{cover, pi};
}

bool is_projective(const Module& m) { return projective_cover(m).p.dim() == m.dim(); }

MinimalityVerdict is_right_minimal(const Map& f, uint64_t sample_seed) {
    const Module& m = f.source();
    const int dm = m.dim(), p = m.algebra().p(), na = m.algebra().dim();
    MinimalityVerdict v;
    if (f.is_onto() && is_projective(m)) {
        v.mode = MinimalityVerdict::Mode::proven;
        v.minimal = gfp::rowspace_contains(radical_submodule(m).basis(), f.kernel());
        return v;
    }
    // Solution set {g : f g = f} = id + {z : z endomorphism, z F = 0}.
    // Unknown Z (dm x dm) flattened; constraints: intertwining + Z F = 0.
    const int unknowns = dm * dm;
    Mat sys(na * unknowns + dm * f.target().dim(), unknowns, p);
    int row = 0;
    for (int i = 0; i < na; ++i) {
        const Mat& am = m.action(i);
        for (int r = 0; r < dm; ++r)
            for (int c = 0; c < dm; ++c, ++row) {
                for (int k = 0; k < dm; ++k) {
                    if (am.at(r, k)) sys.set(row, k * dm + c, gfp::add(sys.at(row, k * dm + c), am.at(r, k), p));
                    if (am.at(k, c)) sys.set(row, r * dm + k, gfp::sub(sys.at(row, r * dm + k), am.at(k, c), p));
                }
            }
    }
    for (int r = 0; r < dm; ++r)
        for (int c = 0; c < f.target().dim(); ++c, ++row)
            for (int k = 0; k < dm; ++k)
                if (f.matrix().at(k, c)) sys.set(row, r * dm + k, f.matrix().at(k, c));
    Mat kern = gfp::kernel_basis(sys);
    const int vdim = kern.rows();

    auto candidate = [&](const std::vector<uint8_t>& coeff) {
        Mat g = Mat::identity(dm, p);
        for (int b = 0; b < vdim; ++b) {
            if (!coeff[b]) continue;
            for (int r = 0; r < dm; ++r)
                for (int c = 0; c < dm; ++c)
                    g.set(r, c, gfp::add(g.at(r, c), gfp::mul(coeff[b], kern.at(b, r * dm + c), p), p));
        }
        return gfp::rank(g) == dm;
    };

    double log_points = vdim * std::log2(double(p));
    if (log_points <= 12.0) {
        v.mode = MinimalityVerdict::Mode::exhaustive;
        v.minimal = true;
        std::vector<uint8_t> coeff(vdim, 0);
        do {
            if (!candidate(coeff)) {
                v.minimal = false;
                break;
            }
        } while (gfp::next_vector(coeff, p));
        return v;
    }
    v.mode = MinimalityVerdict::Mode::sampled;
    v.trials = 10000;
    v.seed = sample_seed;
    v.minimal = true;
    std::mt19937_64 rng(sample_seed);
    std::vector<uint8_t> coeff(vdim);
    for (uint64_t tcount = 0; tcount < v.trials; ++tcount) {
        for (int b = 0; b < vdim; ++b) coeff[b] = static_cast<uint8_t>(rng() % p);
        if (!candidate(coeff)) {
            v.minimal = false;
            break;
        }
    }
    return v;
}

int ext1(const Module& x, const Module& y) {
    if (!x.algebra().same(y.algebra())) throw std::invalid_argument("ext1: algebra mismatch");
    Cover c = projective_cover(x);
    Mat krows = c.pi.kernel();
    if (krows.rows() == 0) return 0;  // projective x
    SubmoduleView k = submodule_module(c.p, Submodule(c.p, krows));

    auto homk = hom_space(k.module, y);
    if (homk.empty()) return 0;
    // Restriction image of Hom(P0, Y) inside Hom(K, Y), as flattened rows.
    auto homp = hom_space(c.p, y);
    const int w = k.module.dim() * y.dim();
    Mat restricted(static_cast<int>(homp.size()), w, x.algebra().p());
    for (size_t i = 0; i < homp.size(); ++i) {
        Mat r = k.embedding.matrix() * homp[i].matrix();
        for (int a = 0; a < r.rows(); ++a)
            for (int b = 0; b < r.cols(); ++b) restricted.set(static_cast<int>(i), a * y.dim() + b, r.at(a, b));
    }
    return static_cast<int>(homk.size()) - gfp::rank(restricted);
}

}  // namespace fdmod
