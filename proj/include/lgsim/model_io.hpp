#pragma once

// File formats.
//
// Model file (structured text, '#' comments):
//   K = 2
//   b = 0 0 0  1 1 0  1 1 0      # row-major (K+1)x(K+1), rows n = 0..K
//   p = 1:0.7 -1:0.3             # offset:probability pairs
//
// Snapshot: '#' header lines carrying origin, N, time, seed, boundary,
// then one 'site,occupancy' line per site of the window.
//
// Flux table CSV: '#' header with model hash, V and sampling parameters,
// then 'rho,G,ci' rows.
//
// Profile CSV: 'x,value' rows; value holds on [x, next x); implicit zero
// outside. Solution traces: 't,x,value' rows.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgsim/config.hpp"
#include "lgsim/flux.hpp"
#include "lgsim/profile.hpp"
#include "lgsim/rate_model.hpp"

namespace lgsim {

RateModel load_model(const std::string& path);
void save_model(const RateModel& model, const std::string& path);

struct SnapshotMeta {
  long long N = 1;
  double time = 0;
  std::uint64_t seed = 0;
};

void save_snapshot(const Configuration& config, const SnapshotMeta& meta,
                   const std::string& path);
std::pair<Configuration, SnapshotMeta> load_snapshot(const std::string& path);

void save_flux_table(const FluxTable& table, std::uint64_t model_hash, const std::string& params,
                     const std::string& path);
FluxTable load_flux_table(const std::string& path);

void save_profile(const PiecewiseConstantProfile& u, const std::string& path);
PiecewiseConstantProfile load_profile(const std::string& path);

// Flat key-value config: 'key = value' or 'key value' lines, '#' comments.
std::map<std::string, std::string> load_keyvalue(const std::string& path);

// Round-trip-exact decimal rendering of a double.
std::string format_double(double v);

}  // namespace lgsim
