#include "noether/linsolve.hpp"

#include <utility>

#include "noether/error.hpp"

namespace noether {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalVector RationalMatrix::multiply(const RationalVector& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in matrix-vector product");
    RationalVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) acc += (*this)(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

namespace {

using IntRow = std::vector<mpz_class>;

// Scales each row by the lcm of its denominators.
std::vector<IntRow> to_integer_rows(const RationalMatrix& m) {
    std::vector<IntRow> a(m.rows(), IntRow(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class lcm = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpq_class& q = m(i, j).raw();
            a[i][j] = q.get_num() * (lcm / q.get_den());
        }
    }
    return a;
}

void reduce_by_content(IntRow& row) {
    mpz_class g = 0;
    for (const auto& x : row) {
        if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g > 1) {
        for (auto& x : row) {
            if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
    }
}

struct IntegerEchelon {
    std::vector<IntRow> rows;  // first `rank` rows are pivot rows
    std::vector<std::size_t> pivot_cols;
};

IntegerEchelon bareiss(std::vector<IntRow> a, std::size_t cols) {
    IntegerEchelon out;
    const std::size_t nrows = a.size();
    std::size_t r = 0;
    mpz_class prev = 1;
    mpz_class tmp;
    for (std::size_t c = 0; c < cols && r < nrows; ++c) {
        std::size_t best = nrows;
        for (std::size_t i = r; i < nrows; ++i) {
            if (a[i][c] == 0) continue;
            if (best == nrows || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0) best = i;
        }
        if (best == nrows) continue;
        std::swap(a[r], a[best]);
        const mpz_class pivot = a[r][c];
        for (std::size_t i = r + 1; i < nrows; ++i) {
            const mpz_class factor = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                // a[i][j] = (pivot * a[i][j] - factor * a[r][j]) / prev, exact by Sylvester's identity.
                tmp = pivot * a[i][j];
                if (factor != 0 && a[r][j] != 0) tmp -= factor * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = pivot;
        out.pivot_cols.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

}  // namespace

RowEchelon rref(const RationalMatrix& m) {
    IntegerEchelon ech = bareiss(to_integer_rows(m), m.cols());
    const std::size_t rank = ech.pivot_cols.size();
    auto& rows = ech.rows;
    for (auto& row : rows) reduce_by_content(row);
    // Integer back-substitution, bottom pivot first.
    for (std::size_t k = rank; k-- > 0;) {
        const std::size_t pc = ech.pivot_cols[k];
        for (std::size_t i = 0; i < k; ++i) {
            if (rows[i][pc] == 0) continue;
            const mpz_class a = rows[k][pc];
            const mpz_class b = rows[i][pc];
            for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = a * rows[i][j] - b * rows[k][j];
            reduce_by_content(rows[i]);
        }
    }
    RowEchelon out;
    out.cols = m.cols();
    out.pivot_cols = ech.pivot_cols;
    out.rows.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        const mpz_class& p = rows[k][ech.pivot_cols[k]];
        RationalVector row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (rows[k][j] != 0) row[j] = Rational(rows[k][j], p);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::size_t rank(const RationalMatrix& m) {
    return bareiss(to_integer_rows(m), m.cols()).pivot_cols.size();
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
    const RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols());
        v[f] = Rational(1);
        for (std::size_t k = 0; k < e.rows.size(); ++k) v[e.pivot_cols[k]] = -e.rows[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
    if (b.size() != m.rows()) throw Error(ErrorKind::InvalidArgument, "right-hand side has wrong length");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const RowEchelon e = rref(aug);
    RationalVector x(m.cols());
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
        if (e.pivot_cols[k] == m.cols()) return std::nullopt;
        x[e.pivot_cols[k]] = e.rows[k][m.cols()];
    }
    return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Rational(1);
    }
    const RowEchelon e = rref(aug);
    if (e.rows.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows[i][n + j];
    }
    return inv;
}

}  // namespace noether
