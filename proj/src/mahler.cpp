#include "chabauty/mahler.hpp"

#include <algorithm>
#include <cmath>

namespace chabauty {

bool trends_to_zero(const std::vector<double>& seq, double ratio) {
  if (seq.size() < 3 || !(seq.front() > 0)) return false;
  for (std::size_t i = seq.size() / 2; i + 1 < seq.size(); ++i)
    if (seq[i + 1] > seq[i]) return false;
  return seq.back() <= ratio * seq.front();
}

bool trends_to_infinity(const std::vector<double>& seq, double ratio) {
  if (seq.size() < 3 || !(seq.front() > 0)) return false;
  for (std::size_t i = seq.size() / 2; i + 1 < seq.size(); ++i)
    if (seq[i + 1] < seq[i]) return false;
  return seq.back() >= ratio * seq.front();
}

MahlerVerdict mahler_verdict(const std::vector<ClosedSubgroupC>& family, double covolume_bound, double min_norm_bound) {
  if (!(covolume_bound > 0) || !(min_norm_bound > 0)) throw DomainError("Mahler bounds must be positive");
  if (family.empty()) throw DomainError("empty family");
  MahlerVerdict out;
  for (const auto& c : family) {
    if (!c.is_lattice()) throw DomainError("Mahler verdict needs lattices, got " + stratum_name(c.stratum()));
    out.covolumes.push_back(covolume(c));
    out.min_norms.push_back(min_norm(c));
  }
  out.sup_covolume = *std::max_element(out.covolumes.begin(), out.covolumes.end());
  out.inf_min_norm = *std::min_element(out.min_norms.begin(), out.min_norms.end());
  out.bounds_hold = out.sup_covolume <= covolume_bound && out.inf_min_norm >= min_norm_bound;
  out.min_norm_to_zero = trends_to_zero(out.min_norms);
  out.covolume_unbounded = trends_to_infinity(out.covolumes);
  out.certified = out.bounds_hold && !out.min_norm_to_zero && !out.covolume_unbounded;
  return out;
}

HeisMahlerVerdict heis_mahler_verdict(const std::vector<HeisLattice>& family, double volume_bound, double u_radius) {
  if (!(volume_bound > 0) || !(u_radius > 0)) throw DomainError("bounds must be positive");
  if (family.empty()) throw DomainError("empty family");
  HeisMahlerVerdict out;
  bool all = true;
  for (const auto& lat : family) {
    double vol = haar_covolume(lat);
    out.volumes.push_back(vol);
    out.volume_ok.push_back(vol <= volume_bound);
    // Only elements of norm < U matter.
    bool clear = true;
    for (const auto& e : heis_enumerate(lat, u_radius)) {
      double nrm = std::sqrt(e.x * e.x + e.y * e.y + e.t * e.t);
      if (nrm > 0 && nrm < u_radius) clear = false;
    }
    out.neighborhood_ok.push_back(clear);
    out.shortest.push_back(shortest_norm(lat));
    all = all && out.volume_ok.back() && clear;
  }
  out.sup_volume = *std::max_element(out.volumes.begin(), out.volumes.end());
  out.volume_growth = trends_to_infinity(out.volumes);
  out.certified = all && !out.volume_growth;
  return out;
}

}  // namespace chabauty
