#pragma once

// Closed subgroups of R and of C, in canonical form.
//
// C is treated as R^2. The six isomorphism types of closed subgroups of C
// are {0}, Z, R, R + Z, Z^2 and C; each has one canonical representative
// per subgroup, up to the float tolerance used by approx_equal().

#include <array>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chabauty/ambient.hpp"

namespace chabauty {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultEnumerationCap = 5'000'000;
inline constexpr double kDefaultEqualityTol = 1e-9;

// ---------------------------------------------------------------- R

/// {0}, (step) Z or R. The parameter p in [0, inf] maps 0 -> {0},
/// p -> (1/p) Z and inf -> R.
class ClosedSubgroupR {
 public:
  enum class Kind { Trivial, Cyclic, Full };

  static ClosedSubgroupR trivial() { return ClosedSubgroupR(Kind::Trivial, 0.0); }
  static ClosedSubgroupR cyclic(double step);
  static ClosedSubgroupR full() { return ClosedSubgroupR(Kind::Full, 0.0); }
  static ClosedSubgroupR from_parameter(double p);

  Kind kind() const { return kind_; }
  /// Positive generator; only meaningful for Kind::Cyclic.
  double step() const { return step_; }
  double parameter() const;
  double dist(double x) const;

  friend bool operator==(const ClosedSubgroupR&, const ClosedSubgroupR&) = default;

 private:
  ClosedSubgroupR(Kind k, double s) : kind_(k), step_(s) {}
  Kind kind_;
  double step_;
};

std::string kind_name(ClosedSubgroupR::Kind k);

// ---------------------------------------------------------------- C

enum class Stratum { Zero, Cyclic, Line, LineCyclic, Lattice, Full };

std::string stratum_name(Stratum s);
Stratum parse_stratum_name(const std::string& name);

class ClosedSubgroupC {
 public:
  struct Zero {};
  struct Cyclic {
    Complex omega;  // arg in [0, pi)
  };
  struct Line {
    Complex u;  // unit, arg in [0, pi)
  };
  struct LineCyclic {
    Complex u;  // unit direction of the identity component, arg in [0, pi)
    Complex v;  // transverse generator: a positive multiple of i u
  };
  struct Lattice {
    Complex z;   // shortest vector
    Complex zp;  // reduced, positively oriented partner
  };
  struct Full {};
  using Data = std::variant<Zero, Cyclic, Line, LineCyclic, Lattice, Full>;

  static ClosedSubgroupC zero() { return ClosedSubgroupC(Zero{}); }
  static ClosedSubgroupC cyclic(Complex omega);
  static ClosedSubgroupC line(Complex direction);
  /// R u + Z v; v is reduced modulo the line. Rejects v on the line.
  static ClosedSubgroupC line_cyclic(Complex direction, Complex v);
  /// Lattice spanned by (z, zp) in any order or orientation.
  static ClosedSubgroupC lattice(Complex z, Complex zp);
  static ClosedSubgroupC full() { return ClosedSubgroupC(Full{}); }

  Stratum stratum() const { return static_cast<Stratum>(data_.index()); }
  const Data& data() const { return data_; }

  bool is_discrete() const;
  bool is_lattice() const { return stratum() == Stratum::Lattice; }
  /// Throws DomainError on other strata.
  const Lattice& as_lattice() const;
  const Cyclic& as_cyclic() const;

 private:
  explicit ClosedSubgroupC(Data d) : data_(std::move(d)) {}
  Data data_;
};

/// Lagrange-Gauss reduction with orientation and boundary tie-breaks:
/// Im(conj z zp) > 0, |z| <= |zp|, 0 <= Re(conj z zp) <= |z|^2/2 on ties,
/// and z is the shortest vector with the least argument in [0, pi).
std::pair<Complex, Complex> reduce_basis(Complex z, Complex zp);

/// Same reduction, also returning the integer matrix U with
/// (new z, new zp) = U (z, zp), rows in the order of the output vectors.
struct ReducedBasis {
  Complex z, zp;
  std::array<long long, 4> transform;  // z = t0 z_in + t1 zp_in, zp = t2 z_in + t3 zp_in
};
ReducedBasis reduce_basis_tracked(Complex z, Complex zp);

/// Covolume: Im(conj z zp) for lattices, +inf for {0} and cyclic, 0 otherwise.
double covolume(const ClosedSubgroupC& c);

/// Squared length of a shortest nonzero element (Cyclic or Lattice only).
double min_norm(const ClosedSubgroupC& c);

/// C# = { z : Im(conj(z) c) in Z for all c in C }.
ClosedSubgroupC dual(const ClosedSubgroupC& c);

/// Euclidean distance from x to the set C.
double dist_point(const ClosedSubgroupC& c, Complex x);

/// Nearest element of C to x (exact for every stratum).
Complex nearest_point(const ClosedSubgroupC& c, Complex x);

bool contains(const ClosedSubgroupC& c, Complex x, double tol = kDefaultEqualityTol);

/// Same subgroup up to `tol` on canonical data (lattices compare by mutual
/// membership of basis vectors, which is independent of tie-breaks).
bool approx_equal(const ClosedSubgroupC& a, const ClosedSubgroupC& b, double tol = kDefaultEqualityTol);

/// Image under the real-linear map x + iy -> (m0 x + m1 y) + i(m2 x + m3 y).
ClosedSubgroupC linear_image(const ClosedSubgroupC& c, const std::array<double, 4>& m);

/// lambda * C for a nonzero complex lambda.
ClosedSubgroupC scale(const ClosedSubgroupC& c, Complex lambda);

struct PlanarSegment {
  Complex center;     // foot of the perpendicular from 0 (or the midpoint)
  Complex direction;  // unit
  double half_length;
};

/// Elements of a subgroup inside the closed disc |x| <= radius.
struct PlanarSupport {
  std::vector<Complex> points;
  std::vector<PlanarSegment> segments;
  bool whole_disc = false;
  double radius = 0;
};

/// Throws EnumerationOverflow if more than `cap` points or segments result.
PlanarSupport enumerate_points(const ClosedSubgroupC& c, double radius, std::size_t cap = kDefaultEnumerationCap);

/// Segment of the line {offset + s u} inside |x| <= radius, if nonempty.
bool clip_line(Complex offset, Complex u, double radius, PlanarSegment& out);

}  // namespace chabauty
