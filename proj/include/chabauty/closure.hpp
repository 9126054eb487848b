#pragma once

// Topological closure of a finitely generated subgroup of C given by exact
// generators (rationals and square roots of integers).

#include <span>
#include <vector>

#include "chabauty/exact.hpp"
#include "chabauty/subgroups.hpp"

namespace chabauty {

struct ExactVector {
  SurdNumber x;
  SurdNumber y;
};

/// Basis (rows) of the Z-module spanned by integer rows, in echelon form.
std::vector<std::vector<BigInt>> integer_row_basis(std::vector<std::vector<BigInt>> rows);

/// Dimension and a basis of the right null space { v : A v = 0 } over Q.
std::vector<std::vector<Rational>> rational_null_space(std::vector<std::vector<Rational>> a, std::size_t columns);

/// Z-basis of the subgroup generated by `gens` (exact).
std::vector<ExactVector> exact_z_basis(std::span<const ExactVector> gens);

/// The canonical closed subgroup equal to the closure of <gens>.
///
/// Collinear generators give Z or R depending on the Z-rank; spanning
/// generators of Z-rank 2 give a lattice, and of higher rank either C or
/// R + Z, decided through the annihilator { xi : <xi, g> in Z }, which is
/// nonzero exactly when the real row space of the generator matrix meets Q^k.
ClosedSubgroupC closure_of_generated(std::span<const ExactVector> gens);

}  // namespace chabauty
