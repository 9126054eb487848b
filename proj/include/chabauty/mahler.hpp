#pragma once

// Mahler-type compactness verdicts on finite samples of lattices: planar
// lattices (covolume and minimal norm) and lattices in H (Haar covolume and
// a fixed identity neighbourhood).

#include <vector>

#include "chabauty/heisenberg.hpp"
#include "chabauty/subgroups.hpp"

namespace chabauty {

struct MahlerVerdict {
  std::vector<double> covolumes;
  std::vector<double> min_norms;
  double sup_covolume = 0;
  double inf_min_norm = kInfinity;
  bool bounds_hold = false;
  bool min_norm_to_zero = false;
  bool covolume_unbounded = false;
  bool certified = false;
};

/// Decay flag on a sample: non-increasing over its second half and ending
/// below `ratio` times its first value.
bool trends_to_zero(const std::vector<double>& seq, double ratio = 0.1);
/// Growth flag: non-decreasing over the second half, ending above `ratio` times the start.
bool trends_to_infinity(const std::vector<double>& seq, double ratio = 10.0);

/// sup covol <= c_bound_cov and inf min_norm >= c_bound_min, with no
/// degeneration flag raised along the sample order. Non-lattices rejected.
MahlerVerdict mahler_verdict(const std::vector<ClosedSubgroupC>& family, double covolume_bound, double min_norm_bound);

struct HeisMahlerVerdict {
  std::vector<double> volumes;
  std::vector<double> shortest;  // shortest nonzero element norm
  std::vector<bool> volume_ok;
  std::vector<bool> neighborhood_ok;  // Lambda n B(e, U) = {e}
  double sup_volume = 0;
  bool volume_growth = false;
  bool certified = false;
};

HeisMahlerVerdict heis_mahler_verdict(const std::vector<HeisLattice>& family, double volume_bound, double u_radius);

}  // namespace chabauty
