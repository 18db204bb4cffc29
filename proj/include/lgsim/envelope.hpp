#pragma once

// Convex and concave envelopes of the polygonal flux restricted to a density
// interval. For a piecewise linear function the envelope is the lower (upper)
// boundary of the convex hull of its vertices, so a monotone-chain sweep over
// the node list is exact.

#include <vector>

#include "lgsim/flux.hpp"

namespace lgsim {

enum class EnvelopeKind { lower_convex, upper_concave };

struct PiecewiseLinearFn {
  std::vector<double> x;  // vertex abscissae, strictly increasing
  std::vector<double> y;  // vertex values

  double eval(double at) const;
  double slope(std::size_t edge) const { return (y[edge + 1] - y[edge]) / (x[edge + 1] - x[edge]); }
};

PiecewiseLinearFn convex_envelope(const FluxTable& flux, double a, double b, EnvelopeKind kind);

}  // namespace lgsim
