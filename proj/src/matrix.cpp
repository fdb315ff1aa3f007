#include "compvar/matrix.hpp"

#include "compvar/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace compvar {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
    if (!(a.field() == b.field())) throw DimensionMismatch(std::string(op) + ": field mismatch");
}

std::vector<std::uint32_t> residues(const Matrix& m) {
    std::vector<std::uint32_t> out(m.rows() * m.cols());
    const Vector& flat = m.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i) out[i] = static_cast<std::uint32_t>(flat[i].get_num().get_ui());
    return out;
}

Matrix from_residues(const Field& field, std::size_t rows, std::size_t cols, const std::vector<std::uint32_t>& r) {
    Matrix out(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = static_cast<unsigned long>(r[i * cols + j]);
    return out;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t result = 1, e = p - 2;
    a %= p;
    while (e > 0) {
        if (e & 1) result = result * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

RrefResult rref_prime(const Matrix& m) {
    const std::uint64_t p = m.field().characteristic();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::uint32_t> a = residues(m);
    RrefResult out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        std::uint64_t inv = inverse_mod(a[r * cols + c], p);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = static_cast<std::uint32_t>(a[r * cols + j] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint64_t f = a[i * cols + c];
            if (f == 0) continue;
            std::uint64_t nf = p - f;
            for (std::size_t j = c; j < cols; ++j) {
                std::uint64_t v = a[r * cols + j];
                if (v != 0) a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + nf * v) % p);
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = from_residues(m.field(), rows, cols, a);
    return out;
}

RrefResult rref_rational(const Matrix& m) {
    Matrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    RrefResult out;
    std::size_t r = 0;
    mpq_class tmp;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(a(piv, c)) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        mpq_class inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j)
            if (sgn(a(r, j)) != 0) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            mpq_class f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) {
                if (sgn(a(r, j)) == 0) continue;
                tmp = f * a(r, j);
                a(i, j) -= tmp;
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(a);
    return out;
}

}  // namespace

Matrix Matrix::identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_ints(const Field& field, std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatch("ragged matrix literal");
        std::size_t j = 0;
        for (long v : row) m(i, j++) = field.from_int(v);
        ++i;
    }
    return m;
}

Matrix Matrix::from_rows(const Field& field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::from_flat(const Field& field, std::size_t rows, std::size_t cols, const Vector& entries) {
    if (entries.size() != rows * cols) throw DimensionMismatch("flat entry count mismatch");
    Matrix m(field, rows, cols);
    m.data_ = entries;
    return m;
}

Vector Matrix::row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Vector Matrix::col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix out(field_, rows_, cols_);
    Scalar cc = field_.reduce(c);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = field_.mul(cc, data_[k]);
    return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("submatrix out of range");
    Matrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r0 + i, c0 + j) = block(i, j);
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("apply: vector length mismatch");
    Vector out(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) acc += (*this)(i, j) * v[j];
        out[i] = field_.reduce(acc);
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "+");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix out(a.field_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "-");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    Matrix out(a.field_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
    return out;
}

Matrix operator-(const Matrix& a) {
    Matrix out(a.field_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.field_.neg(a.data_[k]);
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "*");
    if (a.cols_ != b.rows_)
        throw DimensionMismatch("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                std::to_string(b.cols_));
    const Field& f = a.field_;
    Matrix out(f, a.rows_, b.cols_);
    if (f.is_prime()) {
        const std::uint64_t p = f.characteristic();
        auto ra = residues(a), rb = residues(b);
        std::vector<std::uint32_t> rc(a.rows_ * b.cols_, 0);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                std::uint64_t acc = 0;
                for (std::size_t k = 0; k < a.cols_; ++k) acc = (acc + std::uint64_t(ra[i * a.cols_ + k]) * rb[k * b.cols_ + j]) % p;
                rc[i * b.cols_ + j] = static_cast<std::uint32_t>(acc);
            }
        return from_residues(f, a.rows_, b.cols_, rc);
    }
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) out(i, j) += x * b(k, j);
        }
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    }
    return os << "]";
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
    Matrix out(a.field(), a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack column mismatch");
    Matrix out(a.field(), a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
        throw DimensionMismatch("block2x2 shape mismatch");
    return vstack(hstack(a, b), hstack(c, d));
}

RrefResult rref(const Matrix& m) { return m.field().is_prime() ? rref_prime(m) : rref_rational(m); }

std::size_t rank(const Matrix& m) { return rref(m).rank; }

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RrefResult r = rref(hstack(m, Matrix::identity(m.field(), n)));
    if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) throw std::domain_error("matrix is singular");
    return r.reduced.submatrix(0, n, n, n);
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length mismatch");
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < b.size(); ++i) aug(i, m.cols()) = m.field().reduce(b[i]);
    RrefResult r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols(), Scalar(0));
    for (std::size_t k = 0; k < r.rank; ++k) x[r.pivots[k]] = r.reduced(k, m.cols());
    return x;
}

Scalar trace(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("trace of non-square matrix");
    Scalar t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t = m.field().add(t, m(i, i));
    return t;
}

}  // namespace compvar
