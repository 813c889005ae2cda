#include "sk/linalg.hpp"

namespace sk {

namespace {

// Clear denominators row-wise to get an integer matrix.
std::vector<std::vector<Int>> to_integer_rows(const QMatrix& m) {
    std::vector<std::vector<Int>> rows(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        Int l = 1;
        for (int c = 0; c < m.cols(); ++c) l = lcm(l, denominator(m.at(r, c)));
        auto& row = rows[static_cast<std::size_t>(r)];
        row.resize(static_cast<std::size_t>(m.cols()));
        for (int c = 0; c < m.cols(); ++c) {
            const Rational& q = m.at(r, c);
            row[static_cast<std::size_t>(c)] = numerator(q) * (l / denominator(q));
        }
    }
    return rows;
}

}  // namespace

int rank_ffge(const QMatrix& m) {
    auto rows = to_integer_rows(m);
    const int nr = m.rows(), nc = m.cols();
    int rank = 0;
    Int prev = 1;
    for (int col = 0; col < nc && rank < nr; ++col) {
        int piv = -1;
        for (int r = rank; r < nr; ++r) {
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
        const Int p = rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int r = rank + 1; r < nr; ++r) {
            auto& tr = rows[static_cast<std::size_t>(r)];
            const Int head = tr[static_cast<std::size_t>(col)];
            for (int c = col; c < nc; ++c) {
                Int v = p * tr[static_cast<std::size_t>(c)] -
                        head * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
                tr[static_cast<std::size_t>(c)] = v / prev;  // Bareiss: exact division
            }
        }
        prev = p;
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rational>> ffge_echelon_rows(const QMatrix& m) {
    auto rows = to_integer_rows(m);
    const int nr = m.rows(), nc = m.cols();
    int rank = 0;
    Int prev = 1;
    for (int col = 0; col < nc && rank < nr; ++col) {
        int piv = -1;
        for (int r = rank; r < nr; ++r) {
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
        const Int p = rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int r = rank + 1; r < nr; ++r) {
            auto& tr = rows[static_cast<std::size_t>(r)];
            const Int head = tr[static_cast<std::size_t>(col)];
            for (int c = col; c < nc; ++c) {
                Int v = p * tr[static_cast<std::size_t>(c)] -
                        head * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
                tr[static_cast<std::size_t>(c)] = v / prev;
            }
            for (int c = 0; c < col; ++c) tr[static_cast<std::size_t>(c)] = 0;
        }
        prev = p;
        ++rank;
    }
    std::vector<std::vector<Rational>> out;
    out.reserve(static_cast<std::size_t>(rank));
    for (int r = 0; r < rank; ++r) {
        // Divide by the integer content so echelon rows stay small.
        Int g = 0;
        for (const auto& v : rows[static_cast<std::size_t>(r)]) g = gcd(g, v);
        if (g == 0) g = 1;
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(nc));
        for (const auto& v : rows[static_cast<std::size_t>(r)]) row.emplace_back(v / g);
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<std::vector<Rational>> solve_linear(QMatrix a, std::vector<Rational> b) {
    const int nr = a.rows(), nc = a.cols();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int piv = -1;
        for (int r = row; r < nr; ++r) {
            if (a.at(r, col) != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row) {
            for (int c = 0; c < nc; ++c) std::swap(a.at(piv, c), a.at(row, c));
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(row)]);
        }
        const Rational p = a.at(row, col);
        for (int c = col; c < nc; ++c) a.at(row, c) /= p;
        b[static_cast<std::size_t>(row)] /= p;
        for (int r = 0; r < nr; ++r) {
            if (r == row) continue;
            const Rational f = a.at(r, col);
            if (f == 0) continue;
            for (int c = col; c < nc; ++c) a.at(r, c) -= f * a.at(row, c);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(row)];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < nr; ++r) {
        if (b[static_cast<std::size_t>(r)] != 0) return std::nullopt;
    }
    std::vector<Rational> x(static_cast<std::size_t>(nc), Rational(0));
    for (int r = 0; r < static_cast<int>(pivot_col.size()); ++r) {
        x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = b[static_cast<std::size_t>(r)];
    }
    return x;
}

std::vector<std::vector<Rational>> nullspace(QMatrix a) {
    const int nr = a.rows(), nc = a.cols();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int piv = -1;
        for (int r = row; r < nr; ++r) {
            if (a.at(r, col) != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < nc; ++c) std::swap(a.at(piv, c), a.at(row, c));
        const Rational p = a.at(row, col);
        for (int c = col; c < nc; ++c) a.at(row, c) /= p;
        for (int r = 0; r < nr; ++r) {
            if (r == row) continue;
            const Rational f = a.at(r, col);
            if (f == 0) continue;
            for (int c = col; c < nc; ++c) a.at(r, c) -= f * a.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(nc), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < nc; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(nc), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (int r = 0; r < static_cast<int>(pivot_col.size()); ++r) {
            v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = -a.at(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace sk
