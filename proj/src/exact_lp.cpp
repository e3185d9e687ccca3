#include "conelab/exact_lp.hpp"

#include "conelab/errors.hpp"

namespace conelab {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows + 1, cols + 1), basis_(rows) {}

  std::size_t rows() const { return t_.rows() - 1; }
  std::size_t cols() const { return t_.cols() - 1; }
  Rational& at(std::size_t i, std::size_t j) { return t_(i, j); }
  Rational& rhs(std::size_t i) { return t_(i, cols()); }
  Rational& cost(std::size_t j) { return t_(rows(), j); }
  Rational& objective() { return t_(rows(), cols()); }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_(r, c);
    for (std::size_t j = 0; j < t_.cols(); ++j) t_(r, j) *= inv;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (i == r || t_(i, c) == 0) continue;
      const Rational f = t_(i, c);
      for (std::size_t j = 0; j < t_.cols(); ++j) {
        if (t_(r, j) != 0) t_(i, j) -= f * t_(r, j);
      }
    }
    basis_[r] = c;
  }

  // Minimizes the cost row over columns [0, allowed). Returns false if unbounded.
  bool run(std::size_t allowed, const std::vector<bool>& dropped) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (cost(j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (dropped[i] || at(i, enter) <= 0) continue;
        const Rational ratio = rhs(i) / at(i, enter);
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

 private:
  RMatrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_standard_lp(const RMatrix& a, const RVector& b, const RVector& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionMismatch("solve_standard_lp rhs", m, b.size());
  if (!c.empty() && c.size() != n) throw DimensionMismatch("solve_standard_lp objective", n, c.size());

  Tableau tab(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? -a(i, j) : a(i, j);
    tab.at(i, n + i) = 1;
    tab.rhs(i) = flip ? -b[i] : b[i];
    tab.basis()[i] = n + i;
  }
  // Phase 1 cost row: minimize the sum of artificials.
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s -= tab.at(i, j);
    tab.cost(j) = s;
  }
  {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s -= tab.rhs(i);
    tab.objective() = s;
  }
  std::vector<bool> dropped(m, false);
  tab.run(n + m, dropped);
  if (tab.objective() != 0) return {LpStatus::Infeasible, {}, 0};

  // Drive remaining artificials out of the basis; rows that cannot be pivoted are redundant.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (tab.at(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col == n)
      dropped[i] = true;
    else
      tab.pivot(i, col);
  }

  auto extract = [&] {
    RVector x(n);
    for (std::size_t i = 0; i < m; ++i)
      if (!dropped[i] && tab.basis()[i] < n) x[tab.basis()[i]] = tab.rhs(i);
    return x;
  };

  if (c.empty()) return {LpStatus::Optimal, extract(), 0};

  // Phase 2: minimize -c.x.
  for (std::size_t j = 0; j < n + m; ++j) tab.cost(j) = j < n ? Rational(-c[j]) : Rational(0);
  tab.objective() = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (dropped[i]) continue;
    const std::size_t bj = tab.basis()[i];
    const Rational cb = bj < n ? Rational(-c[bj]) : Rational(0);
    if (cb == 0) continue;
    for (std::size_t j = 0; j < n + m; ++j) tab.cost(j) -= cb * tab.at(i, j);
    tab.objective() -= cb * tab.rhs(i);
  }
  if (!tab.run(n, dropped)) return {LpStatus::Unbounded, {}, 0};
  RVector x = extract();
  return {LpStatus::Optimal, x, dot(c, x)};
}

}  // namespace conelab
