#include "troprank/matrix.hpp"

#include <stdexcept>

namespace troprank {

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows) {
    QMatrix m;
    if (rows.empty()) return m;
    m.rows_ = rows.size();
    m.cols_ = rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const QVec& r : rows) {
        if (r.size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
        m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
}

void QMatrix::append_row(const QVec& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

QMatrix QMatrix::transposed() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

QVec QMatrix::multiply(const QVec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in multiply");
    QVec y(rows_, Rat(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) y[r] += at(r, c) * x[c];
    return y;
}

namespace {

// Denominator-cleared copy: each row scaled by the lcm of its denominators.
// Row scaling by positive rationals preserves rank and kernel.
std::vector<ZVec> cleared_rows(const QMatrix& m) {
    std::vector<ZVec> w(m.rows(), ZVec(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Int scale = 1;
        for (std::size_t c = 0; c < m.cols(); ++c)
            scale = boost::multiprecision::lcm(scale, denominator(m.at(r, c)));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rat& e = m.at(r, c);
            w[r][c] = numerator(e) * (scale / denominator(e));
        }
    }
    return w;
}

struct Echelon {
    std::vector<ZVec> rows;           // integer row echelon form
    std::vector<std::size_t> pivot_col;  // pivot column of echelon row i
};

// Fraction-free Gaussian elimination (Bareiss). Intermediate entries stay
// integral: w(i,j) <- (w(i,j)*pivot - w(i,k)*w(k,j)) / previous_pivot.
Echelon eliminate(std::vector<ZVec> w, std::size_t cols) {
    Echelon e;
    std::size_t lead = 0;
    Int prev(1);
    for (std::size_t col = 0; col < cols && lead < w.size(); ++col) {
        std::size_t pr = lead;
        while (pr < w.size() && w[pr][col] == 0) ++pr;
        if (pr == w.size()) continue;
        std::swap(w[lead], w[pr]);
        const Int pivot = w[lead][col];
        for (std::size_t i = lead + 1; i < w.size(); ++i) {
            const Int factor = w[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                w[i][j] = (w[i][j] * pivot - factor * w[lead][j]) / prev;
            }
        }
        e.pivot_col.push_back(col);
        prev = pivot;
        ++lead;
    }
    w.resize(e.pivot_col.size());
    e.rows = std::move(w);
    return e;
}

}  // namespace

std::size_t matrix_rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return eliminate(cleared_rows(m), m.cols()).pivot_col.size();
}

std::size_t nullity(const QMatrix& m) { return m.cols() - matrix_rank(m); }

std::vector<QVec> solve_homogeneous(const QMatrix& m) {
    const std::size_t n = m.cols();
    Echelon e = (m.rows() == 0 || n == 0) ? Echelon{} : eliminate(cleared_rows(m), n);

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : e.pivot_col) is_pivot[c] = true;

    std::vector<QVec> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        QVec x(n, Rat(0));
        x[free_col] = 1;
        // Back-substitute through the echelon rows.
        for (std::size_t i = e.pivot_col.size(); i-- > 0;) {
            const std::size_t pc = e.pivot_col[i];
            Rat acc(0);
            for (std::size_t j = pc + 1; j < n; ++j)
                if (e.rows[i][j] != 0) acc += Rat(e.rows[i][j], 1) * x[j];
            x[pc] = -acc / Rat(e.rows[i][pc], 1);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}


std::optional<QVec> solve_linear(const QMatrix& m, const QVec& b) {
    // Solutions of m x = b correspond to kernel vectors of [m | b] whose last
    // coordinate is nonzero, rescaled to -1 there.
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    for (const QVec& k : solve_homogeneous(aug)) {
        if (k[m.cols()] == 0) continue;
        QVec x(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) x[c] = -k[c] / k[m.cols()];
        return x;
    }
    return std::nullopt;
}

}  // namespace troprank
