#ifndef SK_LINALG_HPP
#define SK_LINALG_HPP

#include <optional>
#include <vector>

#include "sk/rational.hpp"

namespace sk {

// Dense rational matrix, row-major.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Exact rank via fraction-free (Bareiss) elimination on the cleared integer
// matrix.
int rank_ffge(const QMatrix& m);

// Fraction-free row echelon form; returns the nonzero echelon rows (integer
// entries, as rationals). Deterministic pivot choice: first nonzero entry in
// column order.
std::vector<std::vector<Rational>> ffge_echelon_rows(const QMatrix& m);

// Solve A x = b exactly. Returns one solution (free variables set to zero)
// or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear(QMatrix a, std::vector<Rational> b);

// Basis of the nullspace of A.
std::vector<std::vector<Rational>> nullspace(QMatrix a);

}  // namespace sk

#endif
