#include "chabauty/closure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace chabauty {

std::vector<std::vector<BigInt>> integer_row_basis(std::vector<std::vector<BigInt>> rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows.front().size();
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < ncols && pivot < rows.size(); ++col) {
    while (true) {
      // Smallest nonzero |entry| in this column among the unprocessed rows.
      std::size_t best = rows.size();
      for (std::size_t r = pivot; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[pivot], rows[best]);
      bool clean = true;
      for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        BigInt q = rows[r][col] / rows[pivot][col];
        for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= q * rows[pivot][c];
        if (rows[r][col] != 0) clean = false;
      }
      if (clean) {
        ++pivot;
        break;
      }
    }
  }
  rows.resize(pivot);
  return rows;
}

std::vector<std::vector<Rational>> rational_null_space(std::vector<std::vector<Rational>> a, std::size_t columns) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    Rational inv = Rational(1) / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < columns; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  std::set<std::size_t> pivots(pivot_cols.begin(), pivot_cols.end());
  for (std::size_t free = 0; free < columns; ++free) {
    if (pivots.count(free)) continue;
    std::vector<Rational> v(columns, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

BigInt lcm_of_denominators(const std::vector<std::vector<Rational>>& rows) {
  BigInt l = 1;
  for (const auto& r : rows)
    for (const auto& q : r) l = lcm(l, denominator(q));
  return l;
}

SurdNumber cross(const ExactVector& a, const ExactVector& b) { return a.x * b.y - a.y * b.x; }

}  // namespace

std::vector<ExactVector> exact_z_basis(std::span<const ExactVector> gens) {
  // Coordinates over the Q-basis {sqrt d} of the span, for both components.
  std::set<std::uint64_t> radicands;
  for (const auto& g : gens) {
    for (const auto& [d, q] : g.x.terms()) radicands.insert(d);
    for (const auto& [d, q] : g.y.terms()) radicands.insert(d);
  }
  std::vector<std::uint64_t> basis(radicands.begin(), radicands.end());
  const std::size_t width = 2 * basis.size();
  std::vector<std::vector<Rational>> coords;
  for (const auto& g : gens) {
    std::vector<Rational> row(width, Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (auto it = g.x.terms().find(basis[i]); it != g.x.terms().end()) row[i] = it->second;
      if (auto it = g.y.terms().find(basis[i]); it != g.y.terms().end()) row[basis.size() + i] = it->second;
    }
    coords.push_back(std::move(row));
  }
  if (coords.empty() || width == 0) return {};
  BigInt scale = lcm_of_denominators(coords);
  std::vector<std::vector<BigInt>> ints;
  for (const auto& r : coords) {
    std::vector<BigInt> row;
    for (const auto& q : r) row.push_back(numerator(q * scale));
    ints.push_back(std::move(row));
  }
  std::vector<ExactVector> out;
  for (const auto& r : integer_row_basis(std::move(ints))) {
    ExactVector v;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      v.x += SurdNumber::sqrt_of(basis[i], Rational(r[i], scale));
      v.y += SurdNumber::sqrt_of(basis[i], Rational(r[basis.size() + i], scale));
    }
    out.push_back(std::move(v));
  }
  return out;
}

ClosedSubgroupC closure_of_generated(std::span<const ExactVector> gens) {
  std::vector<ExactVector> b = exact_z_basis(gens);
  const std::size_t k = b.size();
  auto as_complex = [](const ExactVector& v) { return Complex(v.x.to_double(), v.y.to_double()); };
  if (k == 0) return ClosedSubgroupC::zero();

  // Real rank: spanning iff some pair has a nonzero exact cross product.
  std::size_t pi = k, pj = k;
  for (std::size_t i = 0; i < k && pi == k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (!cross(b[i], b[j]).is_zero()) {
        pi = i;
        pj = j;
        break;
      }
  if (pi == k) {
    // Collinear: a Z-basis of size one is cyclic; more is dense in the line.
    return k == 1 ? ClosedSubgroupC::cyclic(as_complex(b[0])) : ClosedSubgroupC::line(as_complex(b[0]));
  }
  if (k == 2) return ClosedSubgroupC::lattice(as_complex(b[0]), as_complex(b[1]));

  // k >= 3: find the rational vectors n with n = xi^T B for some real xi.
  // With the nonzero minor on columns (pi, pj), n lies in the row space iff
  // n_pi M(pj,l) - n_pj M(pi,l) + n_l M(pi,pj) = 0 for every other column l.
  auto minor = [&](std::size_t p, std::size_t q) { return cross(b[p], b[q]); };
  std::vector<std::vector<Rational>> eqs;
  for (std::size_t l = 0; l < k; ++l) {
    if (l == pi || l == pj) continue;
    std::vector<SurdNumber> coeff(k);
    coeff[pi] = minor(pj, l);
    coeff[pj] = -minor(pi, l);
    coeff[l] = minor(pi, pj);
    std::set<std::uint64_t> ds;
    for (const auto& c : coeff)
      for (const auto& [d, q] : c.terms()) ds.insert(d);
    for (auto d : ds) {
      std::vector<Rational> row(k, Rational(0));
      for (std::size_t c = 0; c < k; ++c)
        if (auto it = coeff[c].terms().find(d); it != coeff[c].terms().end()) row[c] = it->second;
      eqs.push_back(std::move(row));
    }
  }
  auto null = rational_null_space(std::move(eqs), k);
  if (null.empty()) return ClosedSubgroupC::full();
  if (null.size() > 1) throw Error("closure: rational row space of rank > 1 for a non-discrete group");

  // Primitive integer n, then xi from the two independent columns.
  BigInt den = 1;
  for (const auto& q : null[0]) den = lcm(den, denominator(q));
  BigInt g = 0;
  std::vector<BigInt> n;
  for (const auto& q : null[0]) {
    n.push_back(numerator(q * den));
    g = gcd(g, n.back());
  }
  for (auto& v : n) v /= g;
  const Complex bi = as_complex(b[pi]), bj = as_complex(b[pj]);
  const double ni = n[pi].convert_to<double>(), nj = n[pj].convert_to<double>();
  // Solve xi . bi = ni, xi . bj = nj.
  const double det = bi.real() * bj.imag() - bi.imag() * bj.real();
  const Complex xi((ni * bj.imag() - nj * bi.imag()) / det, (bi.real() * nj - bj.real() * ni) / det);
  return ClosedSubgroupC::line_cyclic(Complex(0, 1) * xi, xi / std::norm(xi));
}

}  // namespace chabauty
