#ifndef EVCOVER_ALGEBRA_HPP
#define EVCOVER_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gfp.hpp"

/// Finite-dimensional associative unital algebras over F_p, given by
/// structure constants. Associativity and the unit laws are machine-checked
/// at construction, so a constructed Algebra is always a genuine algebra.
///
/// Element coordinates are row vectors; linear maps act by right matrix
/// multiplication on rows throughout.
namespace alg {

using gfp::Mat;

constexpr uint64_t kDefaultScanBound = uint64_t{1} << 20;

class Algebra;
struct Element;
struct Subspace;

class Algebra {
  public:
    Algebra() = default;

    /// mul_table[i][j] = coordinate row of b_i * b_j.
    static Algebra from_table(int p, int dim, std::vector<std::vector<std::vector<uint8_t>>> mul_table,
                              std::vector<uint8_t> unit);

    int p() const;
    int dim() const;
    bool valid() const { return d_ != nullptr; }
    bool same(const Algebra& o) const { return d_ == o.d_; }

    Element element(const std::vector<uint8_t>& coords) const;
    Element element(const Mat& coords) const;
    Element zero() const;
    Element unit() const;
    Element basis_element(int i) const;

    /// row(a*x) = row(x) * left_mul(a); row(x*a) = row(x) * right_mul(a).
    Mat left_mul(const Element& a) const;
    Mat right_mul(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;

    /// Row i = coordinates of b_i * a, i.e. the right-action matrix of a on
    /// the regular module.
    Mat regular_action(const Element& a) const;

    std::optional<Element> try_inverse(const Element& a) const;
    std::optional<Element> is_regular_element(const Element& a) const;

    /// Largest nilpotent two-sided ideal, as a canonical Subspace.
    /// Structural shortcuts (products, matrix algebras) first; otherwise an
    /// exhaustive scan over p^dim elements, refused above scan_bound.
    Subspace jacobson_radical(uint64_t scan_bound = kDefaultScanBound) const;
    bool is_von_neumann_regular(uint64_t scan_bound = kDefaultScanBound) const;

    bool is_nilpotent_ideal(const Subspace& v) const;

    Element lift_idempotent(const Element& x, const Subspace& nil_ideal) const;

    std::vector<Element> primitive_idempotents(uint64_t scan_bound = kDefaultScanBound) const;

    /// Structural role, used for radical/idempotent shortcuts.
    enum class Kind { generic, matrix_algebra, product, opposite };
    Kind kind() const;

    const std::vector<std::vector<std::vector<uint8_t>>>& table() const;
    const std::vector<uint8_t>& unit_coords() const;

    struct Data;
    explicit Algebra(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    const std::shared_ptr<Data>& data() const { return d_; }

  private:
    std::shared_ptr<Data> d_;
};

struct Element {
    Element() = default;
    Element(Algebra a, Mat coords);

    const Algebra& algebra() const { return alg_; }
    const Mat& coords() const { return coords_; }

    bool is_zero() const { return coords_.is_zero(); }
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

  private:
    Algebra alg_;
    Mat coords_;  // 1 x dim
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);

/// A subspace of an algebra, basis rows kept in canonical reduced form.
struct Subspace {
    Subspace() = default;
    Subspace(Algebra a, const Mat& rows);

    const Algebra& algebra() const { return alg_; }
    const Mat& basis() const { return basis_; }
    int dim() const { return basis_.rows(); }
    bool contains(const Element& x) const;

  private:
    Algebra alg_;
    Mat basis_;
};

/// Unital algebra homomorphism; unit preservation and multiplicativity on
/// all basis pairs are checked at construction. matrix() is source-dim x
/// target-dim acting on coordinate rows.
class Morphism {
  public:
    Morphism() = default;
    Morphism(Algebra source, Algebra target, Mat matrix);

    const Algebra& source() const { return src_; }
    const Algebra& target() const { return tgt_; }
    const Mat& matrix() const { return m_; }
    Element apply(const Element& x) const;
    bool is_injective() const;

  private:
    Algebra src_, tgt_;
    Mat m_;
};

struct Algebra::Data {
    int p = 2;
    int dim = 0;
    std::vector<std::vector<std::vector<uint8_t>>> table;  // dim x dim x dim
    std::vector<uint8_t> unit;
    Kind kind = Kind::generic;

    std::shared_ptr<Data> factor_a, factor_b;  // kind == product
    int matrix_n = 0;                          // kind == matrix_algebra
    std::shared_ptr<Data> base;                // kind == opposite

    // Precomputed regular representation, row convention.
    std::vector<Mat> left_mats;   // left_mats[i] = left_mul(b_i)
    std::vector<Mat> right_mats;  // right_mats[i] = right_mul(b_i)

    mutable std::mutex cache_mu;
    mutable std::optional<Mat> radical_cache;
    mutable std::optional<std::vector<Mat>> primitives_cache;
};

/// M_n(F_p) on matrix units e_ij, row-major basis order, unit = sum e_ii.
Algebra matrix_algebra(int p, int n);

struct UpperTriangular {
    Algebra algebra;     // dim n(n+1)/2 on units e_ij, i <= j
    Morphism inclusion;  // into matrix_algebra(p, n)
};
UpperTriangular upper_triangular(int p, int n);

/// F_p[x]/(x^d); basis 1, x, ..., x^{d-1}.
Algebra truncated_polynomial_algebra(int p, int d);

struct Product {
    Algebra algebra;  // basis = A basis followed by B basis
    Morphism proj_a, proj_b;
    Mat inj_a, inj_b;        // multiplicative but non-unital coordinate embeddings
    Element idem_a, idem_b;  // (1,0) and (0,1)
};
Product direct_product(const Algebra& a, const Algebra& b);

Algebra opposite_algebra(const Algebra& a);

/// Quotient by a two-sided ideal (validated); used by radical property checks.
Algebra quotient_by_ideal(const Algebra& a, const Subspace& ideal);

/// Exhaustive quasi-regularity oracle: x in J(A) iff 1 - y x is invertible
/// for every y. Independent of jacobson_radical's nilpotent-ideal scan.
/// Guarded by element count; returns a canonical basis of the accepted span.
Mat radical_oracle(const Algebra& a, uint64_t scan_bound = kDefaultScanBound);

}  // namespace alg

#endif
