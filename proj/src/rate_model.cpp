#include "lgsim/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace lgsim {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RateModel::RateModel(int K, std::vector<double> bTable,
                     std::vector<std::pair<int, double>> kernel)
    : K_(K), b_(std::move(bTable)), kernel_(std::move(kernel)) {
  const int n = K_ + 1;

  if (K_ < 1) throw InvalidRates("max occupancy K must be >= 1");
  if (b_.size() != static_cast<size_t>(n) * n)
    throw InvalidRates("rate table must be (K+1) x (K+1)");

  for (double r : b_)
    if (!(r >= 0) || !std::isfinite(r)) throw InvalidRates("rates must be finite and nonnegative");
  for (int m = 0; m <= K_; ++m)
    if (b(0, m) != 0) throw InvalidRates("b(0,.) must vanish: nothing jumps out of an empty site");
  for (int a = 0; a <= K_; ++a)
    if (b(a, K_) != 0) throw InvalidRates("b(.,K) must vanish: full sites accept no particle");
  if (!(b(1, K_ - 1) > 0)) throw InvalidRates("b(1,K-1) must be positive");
  for (int a = 0; a <= K_; ++a)
    for (int m = 0; m + 1 <= K_; ++m) {
      if (b(a, m) < b(a, m + 1))
        throw InvalidRates("b must be nonincreasing in the target occupancy");
      if (a + 1 <= K_ && b(a + 1, m) < b(a, m))
        throw InvalidRates("b must be nondecreasing in the source occupancy");
    }

  if (kernel_.empty()) throw InvalidKernel("jump kernel is empty");
  std::sort(kernel_.begin(), kernel_.end());
  double psum = 0;
  int g = 0;
  for (size_t i = 0; i < kernel_.size(); ++i) {
    auto [z, pz] = kernel_[i];
    if (z == 0) throw InvalidKernel("p(0) must be zero (offset 0 not allowed)");
    if (i > 0 && kernel_[i - 1].first == z) throw InvalidKernel("duplicate kernel offset");
    if (!(pz > 0) || !std::isfinite(pz))
      throw InvalidKernel("kernel probabilities must be positive and finite");
    psum += pz;
    g = std::gcd(g, std::abs(z));
    range_ = std::max(range_, std::abs(z));
    mean_abs_jump_ += std::abs(z) * pz;
    mean_jump_ += z * pz;
  }
  if (std::abs(psum - 1.0) > 1e-9) throw InvalidKernel("kernel probabilities must sum to 1");
  irreducible_ = (g == 1);

  b_sup_ = *std::max_element(b_.begin(), b_.end());
  if (!(b_sup_ > 0)) throw InvalidRates("all rates are zero");

  B_ = 0;
  for (int a = 0; a <= K_; ++a)
    for (int k = 0; k + 1 <= K_; ++k) {
      B_ = std::max(B_, b(a, k) - b(a, k + 1));
      B_ = std::max(B_, b(k + 1, a) - b(k, a));
    }
  V_ = 2.0 * B_ * mean_abs_jump_;

  thr_.resize(b_.size());
  for (size_t i = 0; i < b_.size(); ++i) thr_[i] = b_[i] / b_sup_;

  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, &K_, sizeof K_);
  for (double r : b_) h = fnv1a(h, &r, sizeof r);
  for (auto& [z, pz] : kernel_) {
    h = fnv1a(h, &z, sizeof z);
    h = fnv1a(h, &pz, sizeof pz);
  }
  hash_ = h;
}

RateModel build_model(int K, const std::vector<double>& bTable,
                      const std::vector<std::pair<int, double>>& kernel) {
  return RateModel(K, bTable, kernel);
}

RateModel k_exclusion(int K, const std::vector<std::pair<int, double>>& kernel) {
  std::vector<double> b(static_cast<size_t>(K + 1) * (K + 1), 0.0);
  for (int n = 1; n <= K; ++n)
    for (int m = 0; m < K; ++m) b[static_cast<size_t>(n) * (K + 1) + m] = 1.0;
  return RateModel(K, std::move(b), kernel);
}

RateModel tasep() { return k_exclusion(1, {{1, 1.0}}); }

}  // namespace lgsim
