#ifndef GRAPHENE_NDR_QUADRATURE_HPP
#define GRAPHENE_NDR_QUADRATURE_HPP

#include <functional>
#include <span>

#include "graphene_ndr/units.hpp"

namespace graphene_ndr {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    int subdivisions = 0;
    bool converged = true;
};

/// Globally adaptive 15-point Gauss-Kronrod integration over the panels
/// [edges[0], edges[1]], [edges[1], edges[2]], ... The worst panel is bisected
/// until the summed error estimate is within max(rel_tol |I|, abs_tol) or the
/// subdivision budget is spent (then `converged` is false and the best
/// estimate is returned). Endpoints are never evaluated.
QuadratureResult integrate_panels(const std::function<double(double)>& f, std::span<const double> edges,
                                  const QuadratureSpec& spec);

}  // namespace graphene_ndr

#endif
