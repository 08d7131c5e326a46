#include "gfp.hpp"

#include <algorithm>
#include <sstream>

namespace gfp {

bool supported_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

int inv(int a, int p) {
    a = norm(a, p);
    if (a == 0) throw std::invalid_argument("gfp::inv: zero has no inverse");
    // Fermat: a^(p-2); p <= 7 so a handful of multiplications.
    int r = 1;
    for (int e = 0; e < p - 2; ++e) r = mul(r, a, p);
    return r;
}

Mat::Mat(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
    if (!supported_prime(p)) throw std::invalid_argument("gfp: unsupported modulus " + std::to_string(p));
    if (rows < 0 || cols < 0 || rows > kMaxMatDim || cols > kMaxMatDim)
        throw guard_error("gfp: matrix extent outside [0," + std::to_string(kMaxMatDim) + "]");
    if (static_cast<long long>(rows) * cols > (1LL << 26)) throw guard_error("gfp: matrix too large");
    a_.assign(static_cast<size_t>(rows) * cols, 0);
}

Mat Mat::identity(int n, int p) {
    Mat m(n, n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::row_vector(const std::vector<uint8_t>& v, int p) {
    Mat m(1, static_cast<int>(v.size()), p);
    for (size_t i = 0; i < v.size(); ++i) m.set(0, static_cast<int>(i), v[i]);
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint8_t x) { return x == 0; });
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

Mat Mat::row(int i) const {
    Mat r(1, cols_, p_);
    for (int c = 0; c < cols_; ++c) r.set(0, c, at(i, c));
    return r;
}

std::vector<uint8_t> Mat::row_data(int i) const {
    return std::vector<uint8_t>(a_.begin() + static_cast<size_t>(i) * cols_,
                                a_.begin() + static_cast<size_t>(i + 1) * cols_);
}

static void require_same_shape(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.modulus() != b.modulus())
        throw std::invalid_argument("gfp: shape or modulus mismatch");
}

Mat operator+(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat r(a.rows_, a.cols_, a.p_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(add(a.a_[i], b.a_[i], a.p_));
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat r(a.rows_, a.cols_, a.p_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(sub(a.a_[i], b.a_[i], a.p_));
    return r;
}

Mat Mat::scaled(int c) const {
    Mat r(rows_, cols_, p_);
    int cc = norm(c, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(mul(a_[i], cc, p_));
    return r;
}

// F_2 product on bitpacked rows; the hot path for truncation-level modules.
static Mat mul_packed_f2(const Mat& a, const Mat& b) {
    const int m = a.rows(), k = a.cols(), n = b.cols();
    const int words = (n + 63) / 64;
    std::vector<uint64_t> bp(static_cast<size_t>(k) * words, 0);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c)
            if (b.at(r, c)) bp[static_cast<size_t>(r) * words + c / 64] |= (uint64_t{1} << (c % 64));
    std::vector<uint64_t> acc(words);
    Mat out(m, n, 2);
    for (int r = 0; r < m; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int i = 0; i < k; ++i) {
            if (!a.at(r, i)) continue;
            const uint64_t* src = &bp[static_cast<size_t>(i) * words];
            for (int w = 0; w < words; ++w) acc[w] ^= src[w];
        }
        for (int c = 0; c < n; ++c)
            if ((acc[c / 64] >> (c % 64)) & 1) out.set(r, c, 1);
    }
    return out;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_ || a.p_ != b.p_) throw std::invalid_argument("gfp: incompatible product");
    if (a.p_ == 2 && a.cols_ > 16) return mul_packed_f2(a, b);
    Mat r(a.rows_, b.cols_, a.p_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            long long s = 0;
            for (int k = 0; k < a.cols_; ++k) s += a.at(i, k) * b.at(k, j);
            r.set(i, j, static_cast<int>(s % a.p_));
        }
    return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
    if (a.rows() == 0 && a.cols() == 0) return b;
    if (b.rows() == 0 && b.cols() == 0) return a;
    if (a.cols() != b.cols() || a.modulus() != b.modulus())
        throw std::invalid_argument("gfp::vstack: column mismatch");
    Mat r(a.rows() + b.rows(), a.cols(), a.modulus());
    for (int i = 0; i < a.rows(); ++i)
        for (int c = 0; c < a.cols(); ++c) r.set(i, c, a.at(i, c));
    for (int i = 0; i < b.rows(); ++i)
        for (int c = 0; c < b.cols(); ++c) r.set(a.rows() + i, c, b.at(i, c));
    return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.modulus() != b.modulus())
        throw std::invalid_argument("gfp::hstack: row mismatch");
    Mat r(a.rows(), a.cols() + b.cols(), a.modulus());
    for (int i = 0; i < a.rows(); ++i) {
        for (int c = 0; c < a.cols(); ++c) r.set(i, c, a.at(i, c));
        for (int c = 0; c < b.cols(); ++c) r.set(i, a.cols() + c, b.at(i, c));
    }
    return r;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < rows_; ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << int(at(r, c));
    }
    os << "]";
    return os.str();
}

Echelon rref(const Mat& a) {
    Mat m = a;
    const int p = m.modulus();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c)) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols(); ++j) {
                int t = m.at(r, j);
                m.set(r, j, m.at(pr, j));
                m.set(pr, j, t);
            }
        int piv_inv = inv(m.at(r, c), p);
        for (int j = 0; j < m.cols(); ++j) m.set(r, j, mul(m.at(r, j), piv_inv, p));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            int f = m.at(i, c);
            if (!f) continue;
            for (int j = 0; j < m.cols(); ++j) m.set(i, j, sub(m.at(i, j), mul(f, m.at(r, j), p), p));
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), std::move(pivots)};
}

int rank(const Mat& a) { return static_cast<int>(rref(a).pivots.size()); }

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.modulus() != b.modulus())
        throw std::invalid_argument("gfp::solve: shape mismatch");
    Echelon e = rref(Mat::hstack(a, b));
    // Any pivot landing in the b-block marks inconsistency.
    for (int piv : e.pivots)
        if (piv >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols(), a.modulus());
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (int j = 0; j < b.cols(); ++j) x.set(e.pivots[i], j, e.reduced.at(static_cast<int>(i), a.cols() + j));
    return x;
}

Mat kernel_basis(const Mat& a) {
    Echelon e = rref(a);
    const int n = a.cols(), p = a.modulus();
    std::vector<bool> is_pivot(n, false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat k(static_cast<int>(free_cols.size()), n, p);
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        int f = free_cols[fi];
        k.set(static_cast<int>(fi), f, 1);
        for (size_t r = 0; r < e.pivots.size(); ++r)
            k.set(static_cast<int>(fi), e.pivots[r], sub(0, e.reduced.at(static_cast<int>(r), f), p));
    }
    return rref(k).reduced;  // canonical form; rows already independent
}

Mat left_kernel(const Mat& a) { return kernel_basis(a.transpose()); }

Mat row_space(const Mat& a) {
    Echelon e = rref(a);
    Mat b(static_cast<int>(e.pivots.size()), a.cols(), a.modulus());
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) b.set(r, c, e.reduced.at(r, c));
    return b;
}

bool rowspace_contains(const Mat& basis, const Mat& vectors) {
    if (vectors.rows() == 0) return true;
    if (basis.rows() == 0) return vectors.is_zero();
    return rank(Mat::vstack(basis, vectors)) == basis.rows();
}

Mat rowspace_sum(const Mat& a, const Mat& b) {
    if (a.rows() == 0) return row_space(b);
    if (b.rows() == 0) return row_space(a);
    return row_space(Mat::vstack(a, b));
}

std::optional<Mat> coordinates_in_rowspace(const Mat& basis, const Mat& vectors) {
    // Fast path for canonical bases: unit pivots with clear pivot columns let
    // the coefficients be read off directly.
    const int p = basis.modulus();
    bool canonical = true;
    std::vector<int> pivots;
    for (int r = 0; r < basis.rows() && canonical; ++r) {
        int c = 0;
        while (c < basis.cols() && basis.at(r, c) == 0) ++c;
        if (c == basis.cols() || basis.at(r, c) != 1 || (!pivots.empty() && c <= pivots.back())) {
            canonical = false;
            break;
        }
        for (int rr = 0; rr < basis.rows(); ++rr)
            if (rr != r && basis.at(rr, c)) canonical = false;
        pivots.push_back(c);
    }
    if (canonical) {
        Mat x(vectors.rows(), basis.rows(), p);
        for (int i = 0; i < vectors.rows(); ++i)
            for (int r = 0; r < basis.rows(); ++r) x.set(i, r, vectors.at(i, pivots[r]));
        if (basis.rows() == 0 ? vectors.is_zero() : (x * basis == vectors)) return x;
        return std::nullopt;
    }
    // X * basis = vectors  <=>  basis^T X^T = vectors^T
    auto xt = solve(basis.transpose(), vectors.transpose());
    if (!xt) return std::nullopt;
    return xt->transpose();
}

std::vector<Mat> enumerate_subspaces(int n, int p) {
    if (p != 2 || n > 6) throw guard_error("enumerate_subspaces: guard is p=2, n<=6");
    std::vector<Mat> out;
    out.push_back(Mat(0, n, p));  // zero subspace
    // Enumerate canonical RREF shapes: choose pivot columns, fill free cells.
    for (int r = 1; r <= n; ++r) {
        std::vector<int> piv(r);
        // first r-subset of [0,n)
        for (int i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            std::vector<bool> is_piv(n, false);
            for (int c : piv) is_piv[c] = true;
            std::vector<std::pair<int, int>> free_cells;
            for (int i = 0; i < r; ++i)
                for (int c = piv[i] + 1; c < n; ++c)
                    if (!is_piv[c]) free_cells.emplace_back(i, c);
            std::vector<uint8_t> fill(free_cells.size(), 0);
            bool more = true;
            while (more) {
                Mat m(r, n, p);
                for (int i = 0; i < r; ++i) m.set(i, piv[i], 1);
                for (size_t f = 0; f < free_cells.size(); ++f)
                    m.set(free_cells[f].first, free_cells[f].second, fill[f]);
                out.push_back(std::move(m));
                more = !fill.empty() && next_vector(fill, p);
                if (fill.empty()) break;
            }
            // next r-subset
            int i = r - 1;
            while (i >= 0 && piv[i] == n - r + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    return out;
}

bool next_vector(std::vector<uint8_t>& v, int p) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] + 1 < p) {
            ++v[i];
            return true;
        }
        v[i] = 0;
    }
    return false;
}

}  // namespace gfp
