#pragma once

// A finite lattice window of occupancies standing in for the infinite line.
// Sites are absolute coordinates in [origin, origin+size). Under `periodic`
// the window is a ring; under `frozen` jumps touching the outside are
// suppressed, so the window edge acts as a wall.

#include <cstdint>
#include <vector>

#include "lgsim/errors.hpp"

namespace lgsim {

enum class Boundary { periodic, frozen };

class Configuration {
 public:
  Configuration() = default;
  Configuration(long long origin, std::size_t size, Boundary boundary)
      : origin_(origin), occ_(size, 0), boundary_(boundary) {}

  long long origin() const { return origin_; }
  long long end() const { return origin_ + static_cast<long long>(occ_.size()); }
  std::size_t size() const { return occ_.size(); }
  Boundary boundary() const { return boundary_; }

  bool contains(long long site) const { return site >= origin_ && site < end(); }

  // Index of a site inside the storage array, wrapping when periodic.
  // Returns -1 for sites outside a frozen window.
  long long index_of(long long site) const {
    long long i = site - origin_;
    const long long n = static_cast<long long>(occ_.size());
    if (i >= 0 && i < n) return i;
    if (boundary_ == Boundary::periodic) {
      i %= n;
      if (i < 0) i += n;
      return i;
    }
    return -1;
  }

  // Occupancy at a site; outside a frozen window reads as 0.
  int at(long long site) const {
    long long i = index_of(site);
    return i < 0 ? 0 : occ_[static_cast<std::size_t>(i)];
  }

  void set(long long site, int value) {
    long long i = index_of(site);
    if (i < 0) throw WindowMismatch("site outside frozen window");
    occ_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
  }

  std::uint8_t* data() { return occ_.data(); }
  const std::uint8_t* data() const { return occ_.data(); }

  long long total_particles() const {
    long long s = 0;
    for (auto v : occ_) s += v;
    return s;
  }

  bool same_window(const Configuration& other) const {
    return origin_ == other.origin_ && occ_.size() == other.occ_.size() &&
           boundary_ == other.boundary_;
  }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.origin_ == b.origin_ && a.boundary_ == b.boundary_ && a.occ_ == b.occ_;
  }

  // Sitewise partial order; both must share the window.
  static bool dominates(const Configuration& lo, const Configuration& hi) {
    if (!lo.same_window(hi)) throw WindowMismatch("ordered comparison needs equal windows");
    for (std::size_t i = 0; i < lo.occ_.size(); ++i)
      if (lo.occ_[i] > hi.occ_[i]) return false;
    return true;
  }

 private:
  long long origin_ = 0;
  std::vector<std::uint8_t> occ_;
  Boundary boundary_ = Boundary::frozen;
};

}  // namespace lgsim
