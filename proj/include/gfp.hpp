#ifndef EVCOVER_GFP_HPP
#define EVCOVER_GFP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// Exact dense linear algebra over the prime fields F_p, p in {2,3,5,7}.
/// Everything downstream (algebras, modules, the sequence ring) computes
/// through this layer, so results are deterministic: row reduction always
/// produces the canonical reduced row-echelon form and solvers set free
/// variables to zero in echelon order.
namespace gfp {

/// Cap on the dimension of domain objects (algebras, modules).
constexpr int kMaxDim = 512;
/// Cap on raw matrix extents; solver scratch (flattened actions, hom
/// systems) legitimately exceeds the domain cap.
constexpr int kMaxMatDim = 1 << 14;

bool supported_prime(int p);

inline int norm(long long a, int p) {
    long long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}
inline int add(int a, int b, int p) { return (a + b) % p; }
inline int sub(int a, int b, int p) { return (a - b + p) % p; }
inline int mul(int a, int b, int p) { return (a * b) % p; }
int inv(int a, int p);

/// Guard violations (scan bounds, dimension caps) throw this so callers can
/// report "skipped" instead of a hard failure.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

/// Dense row-major matrix over F_p. Values are immutable by convention once
/// built by the library (the mutators exist for construction code).
class Mat {
  public:
    Mat() : rows_(0), cols_(0), p_(2) {}
    Mat(int rows, int cols, int p);

    static Mat identity(int n, int p);
    static Mat row_vector(const std::vector<uint8_t>& v, int p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int modulus() const { return p_; }

    uint8_t at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, int v) { a_[static_cast<size_t>(r) * cols_ + c] = static_cast<uint8_t>(norm(v, p_)); }

    bool is_zero() const;
    Mat transpose() const;
    Mat row(int i) const;
    std::vector<uint8_t> row_data(int i) const;

    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Mat& a, const Mat& b);
    Mat scaled(int c) const;
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    static Mat vstack(const Mat& a, const Mat& b);
    static Mat hstack(const Mat& a, const Mat& b);

    std::string to_string() const;

  private:
    int rows_, cols_, p_;
    std::vector<uint8_t> a_;
};

struct Echelon {
    Mat reduced;              // canonical RREF
    std::vector<int> pivots;  // pivot column per nonzero row
};

Echelon rref(const Mat& a);
int rank(const Mat& a);

/// Solve A x = b for a column vector (or matrix of columns) b.
/// Free variables are set to 0 in reduced echelon order; returns nothing when
/// the system is inconsistent.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Right null space, returned as basis rows in canonical reduced form.
/// Row count is always cols - rank.
Mat kernel_basis(const Mat& a);

/// {v : v A = 0} as canonical basis rows.
Mat left_kernel(const Mat& a);

/// Canonical basis of the row space (RREF with zero rows dropped).
Mat row_space(const Mat& a);

bool rowspace_contains(const Mat& canonical_basis, const Mat& vectors);
Mat rowspace_sum(const Mat& a, const Mat& b);

/// Express each row of `vectors` in the rows of `basis`; nullopt when some
/// row is outside the span. `basis` need not be canonical.
std::optional<Mat> coordinates_in_rowspace(const Mat& basis, const Mat& vectors);

/// All subspaces of F_p^n as canonical RREF bases. Guarded: intended for the
/// exhaustive smallness oracles (p = 2, n <= 6).
std::vector<Mat> enumerate_subspaces(int n, int p);

/// Odometer over F_p^n; returns false after the last vector.
bool next_vector(std::vector<uint8_t>& v, int p);

}  // namespace gfp

#endif
