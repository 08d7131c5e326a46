#ifndef EVCOVER_EVRING_HPP
#define EVCOVER_EVRING_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "fdmodule.hpp"

/// The ring R = { (x_1, ..., x_n, x, x, ...) : x_i in T, x in S } for a
/// verified unital ring inclusion iota : S -> T. Elements are stored as a
/// finite head over T plus a tail in S; trailing head entries equal to
/// iota(tail) are trimmed, so equality of values is equality of
/// representations.
namespace evr {

using alg::Algebra;
using alg::Element;
using alg::Morphism;
using gfp::Mat;

class Ring;

struct Elem {
    Elem() = default;

    const std::vector<Mat>& head() const { return head_; }
    const Mat& tail() const { return tail_; }
    int head_len() const { return static_cast<int>(head_.size()); }
    const std::shared_ptr<const void>& ring_handle() const { return ring_; }

    bool is_zero() const;
    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }

  private:
    friend class Ring;
    std::shared_ptr<const void> ring_;  // Ring::Data handle, type-erased to break the cycle
    std::vector<Mat> head_;             // 1 x dim(T) coordinate rows
    Mat tail_;                          // 1 x dim(S)
};

/// Finite quotient T^k x S of R; rho_k drops every slot beyond k (padding
/// short heads with iota(tail) first) and keeps the tail. A surjective ring
/// homomorphism, spot-verified multiplicative at construction.
struct Truncation {
    int k = 0;
    Algebra algebra;                  // T^k x S, blocks in slot order then S
    Morphism proj_s;                  // product projection onto S
    std::vector<Morphism> proj_t;     // product projection onto slot i+1
    Morphism section;                 // S -> T^k x S, s |-> (iota(s),...,iota(s),s)
    std::vector<Element> block_unit;  // central idempotent of slot i+1
    Mat ideal_basis;                  // rows spanning the T-block ideal (image of I)

    Element rho(const Elem& a) const;
    Element slot_element(int i, const Element& t) const;  // t at slot i, zero elsewhere
    Element s_element(const Element& s) const;            // S block only (not the section)
};

class Ring {
  public:
    Ring() = default;

    /// iota must be injective (checked) on top of the Morphism guarantees.
    /// The left-flatness certificate for T over S is computed here once, via
    /// projectivity of T as a module over the opposite algebra of S; a scan
    /// guard failure leaves it empty.
    static Ring create(Algebra t, Algebra s, Morphism iota);

    const Algebra& t_algebra() const;
    const Algebra& s_algebra() const;
    const Morphism& iota() const;
    std::optional<bool> left_flat_cert() const;
    bool same(const Ring& o) const { return d_ == o.d_; }
    bool owns(const Elem& a) const;

    Elem zero() const;
    Elem one() const;
    Elem constant(const Element& s) const;
    Elem from_head_tail(const std::vector<Element>& head, const Element& tail) const;
    Elem from_raw(std::vector<Mat> head, Mat tail) const;
    Elem e(int i) const;  // central idempotent with 1_T at slot i >= 1

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;

    Element phi(const Elem& a) const;        // the tail, in S
    Element pi(int i, const Elem& a) const;  // slot value, in T (i >= 1)

    std::optional<Elem> try_inverse(const Elem& a) const;

    /// Derived membership criterion for J(R): every head entry in J(T), tail
    /// in J(S), and iota(tail) in J(T). Validated against the refutation
    /// oracle below.
    bool in_jacobson(const Elem& a) const;

    /// Search for b with 1 - a b not invertible: structured single-slot and
    /// constant candidates first, then seeded random elements.
    std::optional<Elem> jacobson_refutation_oracle(const Elem& a, int trials, uint64_t seed) const;

    std::optional<Elem> is_regular_element(const Elem& a) const;

    /// Seeded random element with head length at most max_head.
    Elem random_element(int max_head, std::mt19937_64& rng) const;

    /// Cached per ring; building T^k x S validates the product algebra.
    std::shared_ptr<const Truncation> truncation(int k) const;

    struct Data;
    explicit Ring(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    const std::shared_ptr<Data>& data() const { return d_; }

  private:
    Elem make(std::vector<Mat> head, Mat tail) const;
    std::shared_ptr<Data> d_;
};

/// The paper's realization: S = UT_2(F_2) inside T = M_2(F_2).
Ring example_ring_a();

/// Battery ring with nonzero J(T): S = F_2 * 1 inside T = UT_2(F_2).
Ring battery_ring_small();

}  // namespace evr

#endif
