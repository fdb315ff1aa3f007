#include "compvar/linear_system.hpp"

#include "compvar/errors.hpp"

namespace compvar {

std::size_t BlockLayout::add(std::size_t rows, std::size_t cols) {
    offsets_.push_back(total_);
    rows_.push_back(rows);
    cols_.push_back(cols);
    total_ += rows * cols;
    return rows_.size() - 1;
}

Matrix BlockLayout::extract(const Field& field, const Vector& v, std::size_t b) const {
    if (v.size() != total_) throw DimensionMismatch("layout: vector length mismatch");
    Matrix m(field, rows(b), cols(b));
    for (std::size_t i = 0; i < rows(b); ++i)
        for (std::size_t j = 0; j < cols(b); ++j) m(i, j) = v[offset(b) + i * cols(b) + j];
    return m;
}

void BlockLayout::insert(Vector& v, std::size_t b, const Matrix& m) const {
    if (m.rows() != rows(b) || m.cols() != cols(b)) throw DimensionMismatch("layout: block shape mismatch");
    if (v.size() != total_) v.resize(total_, Scalar(0));
    for (std::size_t i = 0; i < rows(b); ++i)
        for (std::size_t j = 0; j < cols(b); ++j) v[offset(b) + i * cols(b) + j] = m(i, j);
}

Vector BlockLayout::pack(const Field& field, const std::vector<Matrix>& blocks) const {
    if (blocks.size() != block_count()) throw DimensionMismatch("layout: block count mismatch");
    Vector v = zero_vector(field, total_);
    for (std::size_t b = 0; b < blocks.size(); ++b) insert(v, b, blocks[b]);
    return v;
}

std::vector<Matrix> BlockLayout::unpack(const Field& field, const Vector& v) const {
    std::vector<Matrix> out;
    out.reserve(block_count());
    for (std::size_t b = 0; b < block_count(); ++b) out.push_back(extract(field, v, b));
    return out;
}

LinearSystem::LinearSystem(Field field, BlockLayout unknowns) : field_(field), layout_(std::move(unknowns)) {}

std::size_t LinearSystem::equation(std::size_t rows, std::size_t cols) {
    eqs_.push_back(Eq{rows_.size(), rows, cols});
    rows_.resize(rows_.size() + rows * cols);
    rhs_.resize(rows_.size(), Scalar(0));
    return eqs_.size() - 1;
}

void LinearSystem::check_eq(std::size_t eq) const {
    if (eq >= eqs_.size()) throw std::out_of_range("linear system: unknown equation");
}

void LinearSystem::add_term(std::size_t eq, std::size_t block, const Matrix* left, const Matrix* right,
                            const Scalar& coeff) {
    check_eq(eq);
    const Eq& e = eqs_[eq];
    std::size_t br = layout_.rows(block), bc = layout_.cols(block);
    if ((left ? left->rows() : br) != e.rows || (left ? left->cols() : e.rows) != br)
        throw DimensionMismatch("linear system: left factor shape mismatch");
    if ((right ? right->cols() : bc) != e.cols || (right ? right->rows() : e.cols) != bc)
        throw DimensionMismatch("linear system: right factor shape mismatch");
    Scalar k = field_.reduce(coeff);
    if (field_.is_zero(k)) return;

    // (L X R)_{ab} = Σ_{c,d} L_{ac} X_{cd} R_{db}
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> lnz(e.rows), rnz(bc);
    for (std::size_t a = 0; a < e.rows; ++a) {
        if (!left) {
            lnz[a].emplace_back(a, field_.one());
            continue;
        }
        for (std::size_t c = 0; c < br; ++c)
            if (!field_.is_zero((*left)(a, c))) lnz[a].emplace_back(c, (*left)(a, c));
    }
    for (std::size_t d = 0; d < bc; ++d) {
        if (!right) {
            rnz[d].emplace_back(d, field_.one());
            continue;
        }
        for (std::size_t b = 0; b < e.cols; ++b)
            if (!field_.is_zero((*right)(d, b))) rnz[d].emplace_back(b, (*right)(d, b));
    }
    std::size_t base = layout_.offset(block);
    for (std::size_t a = 0; a < e.rows; ++a)
        for (const auto& [c, lv] : lnz[a]) {
            Scalar kl = field_.mul(k, lv);
            for (std::size_t d = 0; d < bc; ++d)
                for (const auto& [b, rv] : rnz[d]) {
                    auto& slot = rows_[e.offset + a * e.cols + b][base + c * bc + d];
                    slot = field_.add(slot, field_.mul(kl, rv));
                }
        }
}

void LinearSystem::add_rhs(std::size_t eq, const Matrix& c, const Scalar& coeff) {
    check_eq(eq);
    const Eq& e = eqs_[eq];
    if (c.rows() != e.rows || c.cols() != e.cols) throw DimensionMismatch("linear system: rhs shape mismatch");
    for (std::size_t a = 0; a < e.rows; ++a)
        for (std::size_t b = 0; b < e.cols; ++b) {
            auto& slot = rhs_[e.offset + a * e.cols + b];
            slot = field_.add(slot, field_.mul(field_.reduce(coeff), c(a, b)));
        }
}

Matrix LinearSystem::coefficients() const {
    Matrix m(field_, rows_.size(), layout_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) m(r, c) = v;
    return m;
}

Vector LinearSystem::rhs() const { return rhs_; }

Subspace LinearSystem::solutions() const { return kernel_basis(coefficients()); }

std::optional<Vector> LinearSystem::particular_solution() const { return solve(coefficients(), rhs_); }

}  // namespace compvar
