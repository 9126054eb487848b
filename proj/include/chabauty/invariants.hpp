#pragma once

// Eisenstein invariants of planar lattices,
//   g2 = 60 sum' z^-4,  g3 = 140 sum' z^-6,  Delta = g2^3 - 27 g3^2,
//   j = 1728 g2^3 / Delta,
// their extension to {0} and cyclic subgroups, and the inverse map.

#include <utility>

#include "chabauty/subgroups.hpp"

namespace chabauty {

struct LatticeInvariants {
  Complex g2;
  Complex g3;
  Complex delta;
  Complex j;
  bool has_j = false;
  double err = 0;  // bound on the truncation (and rounding) error of g2 and g3
};

enum class EisensteinMethod {
  QSeries,  // normalized E4, E6 in q = exp(2 pi i tau)
  Shells,   // direct lattice sum with an integral tail bound
};

/// Throws DomainError if L is not a lattice, or if `tol` cannot be met
/// (rounding floor for q-series, enumeration cap for shells).
LatticeInvariants eisenstein(const ClosedSubgroupC& lattice, double tol,
                             EisensteinMethod method = EisensteinMethod::QSeries,
                             std::size_t cap = kDefaultEnumerationCap);

Complex discriminant(Complex a, Complex b);
/// a^3 - 27 b^3, the variant with the cube on b (kept for comparison only).
Complex discriminant_cubed_variant(Complex a, Complex b);

/// g' on {0}, cyclic subgroups and lattices; the cyclic value is the limit
/// (4 pi^4 / 3 w^-4, 8 pi^6 / 27 w^-6).
std::pair<Complex, Complex> extended_g_prime(const ClosedSubgroupC& c);

/// Normalized Eisenstein series at tau (Im tau > 0), summed to double precision.
struct EisensteinValues {
  Complex e2, e4, e6;
};
EisensteinValues eisenstein_normalized(Complex tau);

/// Klein j of the lattice Z + tau Z.
Complex klein_j(Complex tau);

/// tau in the standard fundamental domain: Re in [-1/2, 1/2), |tau| >= 1.
Complex reduce_tau(Complex tau);

/// Inverse of g': {0}, the cyclic subgroup on a^3 = 27 b^2, or the lattice
/// with invariants (a, b). Throws NumericFailure if the round-trip residual
/// exceeds tol (1 + |(a, b)|).
ClosedSubgroupC invert_g(Complex a, Complex b, double tol = 1e-9);

}  // namespace chabauty
