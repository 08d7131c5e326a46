#ifndef EVCOVER_FDMODULE_HPP
#define EVCOVER_FDMODULE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "algebra.hpp"

/// Finite right modules over a finite-dimensional algebra. Module vectors
/// are coordinate rows; the action of an algebra element is a matrix applied
/// on the right, so action(a*b) = action(a) * action(b).
namespace fdmod {

using alg::Algebra;
using gfp::Mat;

class Module {
  public:
    Module() = default;

    /// act[i] = action matrix of the i-th algebra basis vector. Checks that
    /// the unit acts as the identity and that the action respects the
    /// structure constants on all basis pairs.
    static Module from_action(Algebra a, int dim, std::vector<Mat> act);

    const Algebra& algebra() const { return d_->a; }
    int dim() const { return d_->dim; }
    const Mat& action(int i) const { return d_->act[i]; }
    Mat action_of(const alg::Element& x) const;
    bool same(const Module& o) const { return d_ == o.d_; }

    struct Data {
        Algebra a;
        int dim = 0;
        std::vector<Mat> act;
    };
    explicit Module(std::shared_ptr<Data> d) : d_(std::move(d)) {}

  private:
    std::shared_ptr<Data> d_;
};

/// Homomorphism of right modules; the matrix intertwines every basis action
/// (checked at construction).
class Map {
  public:
    Map() = default;
    Map(Module source, Module target, Mat matrix);

    const Module& source() const { return src_; }
    const Module& target() const { return tgt_; }
    const Mat& matrix() const { return m_; }

    Mat kernel() const { return gfp::left_kernel(m_); }
    Mat image() const { return gfp::row_space(m_); }
    bool is_onto() const { return gfp::rank(m_) == tgt_.dim(); }
    bool is_injective() const { return gfp::rank(m_) == src_.dim(); }
    bool is_bijective() const { return is_onto() && is_injective(); }

  private:
    Module src_, tgt_;
    Mat m_;
};

Map compose(const Map& first, const Map& then);

/// Submodule given by canonical basis rows; closure under the action is
/// checked at construction.
struct Submodule {
    Submodule() = default;
    Submodule(Module ambient, const Mat& rows);

    const Module& ambient() const { return amb_; }
    const Mat& basis() const { return basis_; }
    int dim() const { return basis_.rows(); }

  private:
    Module amb_;
    Mat basis_;
};

Module regular_module(const Algebra& a);
Module free_module(const Algebra& a, int rank);
Module zero_module(const Algebra& a);

/// Close a row span under the action.
Mat submodule_closure(const Module& m, const Mat& rows);

struct SubmoduleView {
    Module module;
    Map embedding;  // module -> ambient
};
SubmoduleView submodule_module(const Module& m, const Submodule& sub);

struct QuotientView {
    Module module;
    Map projection;  // ambient -> module
    Mat lift;        // standard representatives; lift * projection.matrix() = identity
};
QuotientView quotient_module(const Module& m, const Submodule& sub);

struct DirectSum {
    Module module;
    Map inj_a, inj_b, proj_a, proj_b;
};
DirectSum direct_sum(const Module& a, const Module& b);

Submodule radical_submodule(const Module& m);
Module top(const Module& m);
QuotientView top_with_map(const Module& m);

/// Smallness via the artinian criterion X <= M J(A).
bool is_small(const Submodule& x, const Module& m);

/// Exhaustive referee for is_small: enumerates every action-closed subspace Y
/// and tests that X + Y = M forces Y = M. Guarded: p = 2 and dim M <= 6.
bool brute_small(const Submodule& x, const Module& m);

std::vector<Map> hom_space(const Module& m, const Module& n);

struct Cover {
    Module p;
    Map pi;
};

/// Projective cover built from principal indecomposables with multiplicities
/// read off the top. The returned map is verified onto with superfluous
/// kernel and bijective top before returning.
Cover projective_cover(const Module& m);
bool is_projective(const Module& m);

struct MinimalityVerdict {
    bool minimal = false;
    enum class Mode { proven, exhaustive, sampled } mode = Mode::proven;
    uint64_t trials = 0;
    uint64_t seed = 0;
    explicit operator bool() const { return minimal; }
};

/// Right minimality of f. Projective onto sources use the superfluous-kernel
/// criterion; otherwise the affine solution set {g : f g = f} is scanned,
/// exhaustively when it has at most 2^12 points, else by seeded sampling.
MinimalityVerdict is_right_minimal(const Map& f, uint64_t sample_seed = 0x5eed);

/// dim Ext^1(X, Y) from a minimal projective presentation.
int ext1(const Module& x, const Module& y);

/// V tensor_S T along iota : S -> T, as a right T-module: the quotient of
/// V tensor_F T by the balancing relations (v s) x t - v x (iota(s) t).
Module induce_right(const Module& v, const alg::Morphism& iota);

/// Module structure pulled back along an algebra morphism.
Module restrict(const alg::Morphism& phi, const Module& m);

/// Cokernel of a seeded random map A^rels -> A^gens; deterministic in seed.
Module random_module(const Algebra& a, int gens, int rels, uint64_t seed);

}  // namespace fdmod

#endif
