#pragma once

#include <optional>
#include <vector>

#include "graphtori/field.hpp"

namespace graphtori {

/// Scalar curvature of the graph metric g_T + df (x) df at every node,
/// assembled as the discrete divergence (same central stencil as the
/// field derivatives) of the node-wise vector field
///   W = (tr(Hess f) Df - Hess f . Df) / sqrt(1 + |Df|^2).
/// Because the divergence is a plain central difference of a periodic
/// array, the grid sum of R telescopes to zero exactly.
std::vector<double> scalar_curvature(const ScalarField& field);

struct ExcessResult {
    double m = 0.0;             ///< -integral of min(R, 0); the negative excess
    double positive_part = 0.0; ///< integral of max(R, 0)
    double relative_gap = 0.0;  ///< |positive_part - m| / max(m, eps)
};

/// Negative scalar-curvature excess m(f) >= 0. The positive and negative
/// parts must agree (the total integral vanishes); disagreement beyond
/// 1e-8 relative throws DiscretizationError as a too-coarse-grid signal.
ExcessResult negative_excess(const std::vector<double>& curvature, const FlatTorus& torus);

struct LowerBoundCheck {
    bool premise_holds = false;  ///< min R >= -epsilon
    double min_curvature = 0.0;
    double excess = 0.0;
    double bound = 0.0;          ///< vol(T) * epsilon
    double margin = 0.0;         ///< bound - excess (only meaningful when premise holds)
};

LowerBoundCheck lower_bound_check(const std::vector<double>& curvature,
                                  const FlatTorus& torus, double epsilon);

struct DiameterResult {
    double value = 0.0;           ///< max grid-geodesic distance found
    double stencil_factor = 1.09; ///< worst-case 26-neighbor overestimation, flat metric
};

/// Upper estimate of the intrinsic graph diameter: Dijkstra on the
/// periodic 26-neighbor grid graph with edge length equal to the
/// g_M-length of the straight segment (midpoint rule for df along the
/// edge), maximized over a fixed source set (node 0 and the argmin of f).
DiameterResult graph_diameter(const ScalarField& field);

/// Graph torus bundle: the field together with its curvature summary.
/// Derived quantities are computed once at construction; the diameter
/// estimate is optional because it is by far the most expensive piece.
class GraphTorus {
public:
    explicit GraphTorus(ScalarField field);

    const ScalarField& field() const { return field_; }
    const FlatTorus& torus() const { return field_.torus(); }
    const std::vector<double>& curvature() const { return curvature_; }

    double excess() const { return excess_.m; }
    const ExcessResult& excess_detail() const { return excess_; }
    double min_curvature() const { return min_R_; }
    double max_curvature() const { return max_R_; }
    double graph_volume() const { return graph_volume_; }
    double min_f() const { return field_.min_value(); }

    /// Runs the Dijkstra estimate and caches it.
    const DiameterResult& diameter_estimate();
    std::optional<DiameterResult> cached_diameter() const { return diameter_; }

private:
    ScalarField field_;
    std::vector<double> curvature_;
    ExcessResult excess_;
    double min_R_ = 0.0, max_R_ = 0.0;
    double graph_volume_ = 0.0;
    std::optional<DiameterResult> diameter_;
};

/// integral of sqrt(1 + |Df|^2) over the flat torus; always >= vol(T).
double graph_volume(const ScalarField& field);

}  // namespace graphtori
