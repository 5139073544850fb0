#include "polyml/int_matrix.hpp"

#include <stdexcept>

namespace polyml {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long v : row) data_.push_back(to_big(v));
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<BigInt> IntMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<long>(r * cols_),
            data_.begin() + static_cast<long>((r + 1) * cols_)};
}

std::vector<BigInt> IntMatrix::col(std::size_t c) const {
    std::vector<BigInt> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) at(r, c) = -at(r, c);
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const BigInt& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) at(target, c) += factor * at(source, c);
}

HermiteResult hermite_normal_form(const IntMatrix& m) {
    if (m.rows() == 0) throw std::invalid_argument("hermite_normal_form: empty matrix");
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    const std::size_t rows = m.rows(), cols = m.cols();

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // Euclidean elimination within the column: repeat until at most one
        // nonzero entry remains at or below pivot_row.
        while (true) {
            std::size_t best = rows;
            for (std::size_t r = pivot_row; r < rows; ++r) {
                if (h.at(r, col) == 0) continue;
                if (best == rows || abs(h.at(r, col)) < abs(h.at(best, col))) best = r;
            }
            if (best == rows) break;  // column is zero from pivot_row down
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            bool cleared = true;
            for (std::size_t r = pivot_row + 1; r < rows; ++r) {
                if (h.at(r, col) == 0) continue;
                BigInt q;
                // round-to-nearest quotient keeps remainders small
                BigInt rem;
                mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), h.at(r, col).get_mpz_t(),
                            h.at(pivot_row, col).get_mpz_t());
                if (rem * 2 > abs(h.at(pivot_row, col))) q += (h.at(pivot_row, col) > 0) ? 1 : -1;
                h.add_row_multiple(r, pivot_row, -q);
                u.add_row_multiple(r, pivot_row, -q);
                if (h.at(r, col) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (pivot_row < rows && h.at(pivot_row, col) != 0) {
            if (h.at(pivot_row, col) < 0) {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            // reduce entries above the pivot into [0, pivot)
            const BigInt& p = h.at(pivot_row, col);
            for (std::size_t r = 0; r < pivot_row; ++r) {
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(r, col).get_mpz_t(), p.get_mpz_t());
                h.add_row_multiple(r, pivot_row, -q);
                u.add_row_multiple(r, pivot_row, -q);
            }
            ++pivot_row;
        }
    }
    return {std::move(h), std::move(u)};
}

std::size_t rank(const IntMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        a.swap_rows(r, piv);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a.at(i, c) == 0) continue;
            // fraction-free row combination preserves rank
            BigInt f = a.at(i, c), p = a.at(r, c);
            for (std::size_t j = c; j < cols; ++j) a.at(i, j) = a.at(i, j) * p - a.at(r, j) * f;
        }
        ++r;
    }
    return r;
}

IntMatrix integer_kernel_basis(const IntMatrix& m) {
    const std::size_t c = m.cols();
    if (c == 0) return IntMatrix(0, 0);
    if (m.rows() == 0) return IntMatrix::identity(c);
    // Row-reduce M^T with a unimodular U; rows of U matching zero rows of the
    // HNF generate the full (saturated) kernel lattice.
    HermiteResult hr = hermite_normal_form(m.transpose());
    std::vector<std::size_t> zero_rows;
    for (std::size_t r = 0; r < hr.h.rows(); ++r) {
        bool zero = true;
        for (std::size_t j = 0; j < hr.h.cols(); ++j)
            if (hr.h.at(r, j) != 0) {
                zero = false;
                break;
            }
        if (zero) zero_rows.push_back(r);
    }
    IntMatrix basis(zero_rows.size(), c);
    for (std::size_t i = 0; i < zero_rows.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) basis.at(i, j) = hr.u.at(zero_rows[i], j);
    return basis;
}

BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt prev = 1;
    int sign = 1;
    // Bareiss: every division below is exact
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : BigInt(-a.at(n - 1, n - 1));
}

bool row_lattice_contains(const IntMatrix& basis, const std::vector<BigInt>& x) {
    if (basis.cols() != x.size())
        throw std::invalid_argument("row_lattice_contains: dimension mismatch");
    if (basis.rows() == 0) {
        for (const BigInt& v : x)
            if (v != 0) return false;
        return true;
    }
    // Solve y * H = x over the integers against the echelon form of the basis.
    HermiteResult hr = hermite_normal_form(basis);
    std::vector<BigInt> rem = x;
    for (std::size_t r = 0; r < hr.h.rows(); ++r) {
        std::size_t lead = hr.h.cols();
        for (std::size_t c = 0; c < hr.h.cols(); ++c)
            if (hr.h.at(r, c) != 0) {
                lead = c;
                break;
            }
        if (lead == hr.h.cols()) continue;
        if (rem[lead] == 0) continue;
        if (!mpz_divisible_p(rem[lead].get_mpz_t(), hr.h.at(r, lead).get_mpz_t())) return false;
        BigInt q = exact_div(rem[lead], hr.h.at(r, lead));
        for (std::size_t c = lead; c < hr.h.cols(); ++c) rem[c] -= q * hr.h.at(r, c);
    }
    for (const BigInt& v : rem)
        if (v != 0) return false;
    return true;
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    BigInt det = determinant(m);
    if (det != 1 && det != -1) return std::nullopt;
    const std::size_t n = m.rows();
    // adjugate / det with det = +-1 stays integral
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc) = m.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            BigInt cof = determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = det == 1 ? cof : BigInt(-cof);
        }
    return inv;
}

}  // namespace polyml
