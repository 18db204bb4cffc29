#pragma once

// Jump rates b(n,m) and jump kernel p(z) for misanthrope-type lattice gases:
// a particle hops from x to x+z at rate p(z) * b(eta(x), eta(x+z)).
// Validation enforces the structural assumptions the dynamics depends on:
//   - b(0,.) = 0, b(.,K) = 0, b(1,K-1) > 0   (at most K particles per site)
//   - b nondecreasing in its first argument, nonincreasing in its second
//     (this is what makes the shared-event coupling order-preserving)
//   - p a probability vector on nonzero offsets with finite support.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lgsim/errors.hpp"

namespace lgsim {

class RateModel {
 public:
  // bTable is row-major (K+1)x(K+1): bTable[n*(K+1)+m] = b(n,m).
  // kernel lists (offset, probability) pairs; offsets nonzero, distinct.
  RateModel(int K, std::vector<double> bTable,
            std::vector<std::pair<int, double>> kernel);

  int max_occupancy() const { return K_; }
  double b(int n, int m) const { return b_[static_cast<size_t>(n) * (K_ + 1) + m]; }
  double b_sup() const { return b_sup_; }

  // Largest rate increment over one occupancy step; V = 2B * sum |z| p(z)
  // is a Lipschitz bound for the macroscopic flux.
  double rate_increment_bound() const { return B_; }
  double flux_lipschitz() const { return V_; }

  // sum_z |z| p(z) and max |z|; the rate b_sup*sum|z|p(z) bounds how fast
  // information spreads through the lattice.
  double mean_abs_jump() const { return mean_abs_jump_; }
  double mean_jump() const { return mean_jump_; }
  int range() const { return range_; }

  const std::vector<std::pair<int, double>>& kernel() const { return kernel_; }

  // gcd of |offsets| == 1. Failure is a warning, not an error.
  bool irreducible() const { return irreducible_; }

  // Acceptance threshold b(n,m)/b_sup, precomputed for the event loop.
  double threshold(int n, int m) const {
    return thr_[static_cast<size_t>(n) * (K_ + 1) + m];
  }
  const double* threshold_data() const { return thr_.data(); }

  std::uint64_t hash() const { return hash_; }

 private:
  int K_;
  std::vector<double> b_;
  std::vector<std::pair<int, double>> kernel_;
  std::vector<double> thr_;
  double b_sup_ = 0;
  double B_ = 0;
  double V_ = 0;
  double mean_abs_jump_ = 0;
  double mean_jump_ = 0;
  int range_ = 0;
  bool irreducible_ = true;
  std::uint64_t hash_ = 0;
};

RateModel build_model(int K, const std::vector<double>& bTable,
                      const std::vector<std::pair<int, double>>& kernel);

// b(n,m) = 1 if n > 0 and m < K: the K-exclusion family.
RateModel k_exclusion(int K, const std::vector<std::pair<int, double>>& kernel);

// Totally asymmetric simple exclusion: K = 1, p(1) = 1, b(1,0) = 1.
RateModel tasep();

}  // namespace lgsim
