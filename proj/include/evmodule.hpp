#ifndef EVCOVER_EVMODULE_HPP
#define EVCOVER_EVMODULE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evring.hpp"

/// Finitely presented right R-modules given by eventually-constant
/// presentation matrices, their finite shadows (slot components, tail
/// quotient, truncations), the flatness test of the T^N x S decomposition,
/// and the pullback construction that produces verified G-flat covers.
namespace evm {

using evr::Elem;
using evr::Ring;
using gfp::Mat;

/// Matrix over R; columns act as relation vectors of a presentation.
struct EvMat {
    EvMat() = default;
    EvMat(Ring ring, int rows, int cols, std::vector<Elem> entries);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Elem& at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    int stable_index() const { return stable_; }

  private:
    Ring ring_;
    int rows_ = 0, cols_ = 0;
    int stable_ = 0;
    std::vector<Elem> entries_;
};

/// Truncated shadow of a finitely presented module: the module over T^k x S
/// together with the projection from (and standard lift into) the free
/// module R_k^gens it is presented over.
struct TruncatedView {
    std::shared_ptr<const evr::Truncation> trunc;
    fdmod::Module module;
    Mat free_to_module;  // (gens * dim R_k) x dim
    Mat lift;            // dim x (gens * dim R_k)
};

/// Cokernel of the presentation matrix acting R^cols -> R^gens.
class FpModule {
  public:
    FpModule() = default;
    static FpModule create(Ring ring, int gens, EvMat presentation);

    const Ring& ring() const;
    int gens() const;
    const EvMat& presentation() const;
    int stable_index() const;

    /// A cokernel of free modules together with its projection and a
    /// standard lift; used for the tail quotient and the slot components.
    struct FreeQuotient {
        fdmod::Module module;
        Mat free_to_module;
        Mat lift;
    };

    /// Slot-i cokernel over T (i >= 1); constant for i > stable_index.
    fdmod::Module component(int i) const;
    fdmod::Module generic_component() const { return generic_view().module; }
    const FreeQuotient& generic_view() const;

    /// Cokernel of the tail matrix over S, with the projection from S^gens.
    const FreeQuotient& tail_view() const;
    fdmod::Module tail_quotient() const { return tail_view().module; }

    TruncatedView truncate(int k) const;

    struct Data;
    const std::shared_ptr<Data>& data() const { return d_; }

  private:
    explicit FpModule(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    std::shared_ptr<Data> d_;
};

struct ClassVerdict {
    bool in_x = false;          // M I = M, i.e. the tail quotient vanishes
    bool in_y = false;          // M I = 0, i.e. every slot component vanishes
    bool z_up_to_depth = false; // bounded evidence that ann_M(I) = 0
};
ClassVerdict class_membership(const FpModule& m, int depth);

/// Flat iff the tail quotient is projective over S and every distinct slot
/// component is projective over T (the T side is automatic when J(T) = 0).
bool is_flat(const FpModule& m);

/// Linear solve over R: slotwise T-systems up to the joint stable index and
/// one S-system for the tail. Gated by the ring's left-flatness certificate.
std::optional<std::vector<Elem>> solve_over_r(const EvMat& a, const std::vector<Elem>& b);

/// Seeded random presentation with structured entries (zero, slot-supported,
/// constant, mixed) and head lengths at most max_head.
FpModule random_fp_module(const Ring& ring, int gens, int rels, int max_head, uint64_t seed);

/// One truncation level of the realized pullback of N -> V <- L.
struct PullbackLevel {
    std::shared_ptr<const evr::Truncation> trunc;
    TruncatedView n_k;
    fdmod::Module v_k, l_k, x_k;  // V, L, X restricted along the S-projection
    fdmod::Map f_k;               // N_k -> V_k, the tail-quotient map
    fdmod::Map g_k;               // L_k -> V_k, same matrix as g
    fdmod::Module lprime;         // pullback inside N_k + L_k
    Mat basis;                    // lprime rows in N_k + L_k coordinates
    fdmod::Map pi1, pi2;          // projections of the pullback
    fdmod::Map eps2;              // X -> L', y |-> (0, y)
    Mat eps1;                     // ker f_k -> L' coordinate rows, x |-> (x, 0)
};

/// Realized pullback object: the cover data over S plus truncation levels
/// built (and diagram-checked) on demand.
class Pullback {
  public:
    Pullback() = default;
    static Pullback create(FpModule n, fdmod::Module l, fdmod::Map g);

    const FpModule& n() const;
    const fdmod::Module& v() const;
    const fdmod::Module& l() const;
    const fdmod::Map& g() const;
    const Mat& x_basis() const;       // ker g, canonical rows in L coordinates
    const fdmod::Module& x_module() const;

    /// Finite pullback over T^k x S; commutativity and the exact-column
    /// dimension identity are verified at construction.
    const PullbackLevel& level(int k) const;

    struct Data;
    const std::shared_ptr<Data>& data() const { return d_; }

  private:
    explicit Pullback(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    std::shared_ptr<Data> d_;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    enum class Mode { proven, exhaustive, sampled } mode = Mode::exhaustive;
    std::string details;
    std::vector<bool> per_level;  // one verdict per tested truncation, where applicable
};

struct CoverCertificate {
    Pullback pullback;
    int depth = 3;
    std::vector<CheckResult> checks;  // C1..C6 in order
    bool passing() const;
    const CheckResult& check(const std::string& name) const;
};

/// Theorem pipeline: V = tail quotient of N, (L, g) = projective cover of V
/// over S, X = ker g; assemble the pullback and evaluate C1..C6.
CoverCertificate g_flat_cover(const FpModule& n, int depth = 3);

/// Same pipeline with a caller-supplied precover (L, g) of the tail quotient;
/// used for non-minimal negative controls.
CoverCertificate g_flat_cover_with(const FpModule& n, const fdmod::Module& l, const fdmod::Map& g,
                                   int depth = 3);

/// Re-evaluate every check of an existing certificate at a given depth.
CoverCertificate verify_certificate(const CoverCertificate& cert, int depth);

}  // namespace evm

#endif
