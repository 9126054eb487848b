#pragma once

// Closed subgroups of the Heisenberg group H = C x R: lattices carried by a
// projected basis with lifts and a central step, the abelian and central
// families, and pullbacks of closed subgroups of C.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chabauty/ambient.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/subgroups.hpp"

namespace chabauty {

/// Rational generator data, kept when the lattice was built exactly.
struct ExactHeisData {
  HeisElementQ lift;
  HeisElementQ lift_prime;
  Rational step;
};

/// A lattice in H: L = p(Lambda) has reduced positive basis (z, zp), the
/// lifts are (z, t) and (zp, tp) with t, tp in [0, covol(L)/n), and
/// Lambda n Z(H) = (0, covol(L)/n) Z.
struct HeisLattice {
  Complex z;
  Complex zp;
  double t = 0;
  double tp = 0;
  long long n = 1;
  std::optional<ExactHeisData> exact;

  double covolume() const;
  double central_step() const { return covolume() / double(n); }
  HeisElement lift() const { return make_heis(z, t); }
  HeisElement lift_prime() const { return make_heis(zp, tp); }
  /// lift^a lift_prime^b
  HeisElement word(long long a, long long b) const;
};

/// Canonical lattice from float data (reduces the basis, recomputes lifts).
HeisLattice make_heis_lattice(Complex z, Complex zp, double t, double tp, long long n);

/// The lattice generated by rational elements. Throws DomainError when the
/// generated group is not a lattice.
HeisLattice heis_lattice_from_generators(std::span<const HeisElementQ> gens);

/// Generated by (1,0), (i,0) and (0,1/n).
HeisLattice make_lambda_n(long long n);

/// Generated by (1,0), (-1/k, 1) and (-i k^2 n, 0).
HeisLattice example11_lattice(long long n, long long k);

/// Integer coordinates of p(x) in the basis, if p(x) lies in L.
std::optional<std::pair<long long, long long>> planar_coordinates(const HeisLattice& lat, Complex w, double tol);

bool heis_membership(const HeisLattice& lat, const HeisElement& x, double tol = kDefaultEqualityTol);
/// Exact test; needs lat.exact.
bool heis_membership(const HeisLattice& lat, const HeisElementQ& x);

/// [Lambda, Lambda] = (0, covol(L)) Z.
ClosedSubgroupR commutator_subgroup(const HeisLattice& lat);
/// Lambda n Z(H) = (0, covol(L)/n) Z.
ClosedSubgroupR center_subgroup(const HeisLattice& lat);
long long center_index(const HeisLattice& lat);

HeisLattice aut_apply_lattice(const HeisAutomorphism& a, const HeisLattice& lat);
HeisLattice dilate_lattice(double s, const HeisLattice& lat);

/// Same subgroup: every generator of each lies in the other.
bool approx_equal(const HeisLattice& a, const HeisLattice& b, double tol = kDefaultEqualityTol);

/// Haar volume of H / Lambda: covol(L) times the central step.
double haar_covolume(const HeisLattice& lat);

/// Elements with |x| <= radius, ordered by (b, a, central multiple).
std::vector<HeisElement> heis_enumerate(const HeisLattice& lat, double radius,
                                        std::size_t cap = kDefaultEnumerationCap);

/// Shortest nonzero element norm.
double shortest_norm(const HeisLattice& lat);

// ------------------------------------------------------------ subgroups

enum class HeisStratum {
  Identity,    // {e}
  CR,          // isomorphic to R
  CZ,          // Z
  CR2,         // R^2
  CRxZ,        // R + Z
  CZ2,         // Z^2
  PullbackRZ,  // p^-1 of an R + Z subgroup of C
  Whole,       // H
  LInfinity,   // p^-1 of a lattice
  LN,          // lattice with centre index n
};

std::string heis_stratum_name(HeisStratum s);

class HeisSubgroup {
 public:
  struct Trivial {};
  struct Central {
    ClosedSubgroupR sub;  // cyclic; the full centre is Pullback({0})
  };
  struct Planar {
    Complex u;            // unit, arg in [0, pi)
    ClosedSubgroupC sub;  // in coordinates (s, r) <-> (s u, r)
  };
  struct Pullback {
    ClosedSubgroupC base;
  };
  struct Lattice {
    HeisLattice lattice;
  };
  using Data = std::variant<Trivial, Central, Planar, Pullback, Lattice>;

  static HeisSubgroup trivial() { return HeisSubgroup(Trivial{}); }
  static HeisSubgroup central(const ClosedSubgroupR& sub);
  static HeisSubgroup planar(Complex u, const ClosedSubgroupC& sub);
  static HeisSubgroup pullback(const ClosedSubgroupC& base) { return HeisSubgroup(Pullback{base}); }
  static HeisSubgroup lattice(const HeisLattice& lat) { return HeisSubgroup(Lattice{lat}); }
  static HeisSubgroup whole() { return pullback(ClosedSubgroupC::full()); }

  const Data& data() const { return data_; }
  bool is_abelian() const;

 private:
  explicit HeisSubgroup(Data d) : data_(std::move(d)) {}
  Data data_;
};

inline HeisSubgroup pullback_center(const ClosedSubgroupC& c) { return HeisSubgroup::pullback(c); }

struct HeisClassification {
  HeisStratum stratum;
  long long n = 0;  // centre index for LN
  std::string label;
};

HeisClassification classify_heis(const HeisSubgroup& s);

/// The projection p(S), a closed subgroup of C.
ClosedSubgroupC projection(const HeisSubgroup& s);

/// Closure of the subgroup generated by rational elements.
HeisSubgroup closure_of_generated(std::span<const HeisElementQ> gens);

HeisSubgroup dilate(double s, const HeisSubgroup& g);

/// A lattice in L_n(H) over p^-1(L) at Chabauty distance <= eps, with n
/// growing until the engine confirms the bound.
struct DensityWitness {
  HeisLattice lattice;
  double distance;
};
DensityWitness density_witness(const ClosedSubgroupC& base, double eps, const MetricConfig& cfg = {});

std::shared_ptr<const SetView> heis_view(const HeisSubgroup& s);

}  // namespace chabauty
