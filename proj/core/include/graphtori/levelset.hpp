#pragma once

#include <vector>

#include "graphtori/curvature.hpp"
#include "graphtori/field.hpp"

namespace graphtori {

struct Triangle {
    std::array<Vec3, 3> phys;  ///< vertices in physical coordinates
    std::array<Vec3, 3> lat;   ///< same vertices in (unwrapped) lattice coordinates
};

struct TriangleMesh {
    std::vector<Triangle> triangles;
    bool empty() const { return triangles.empty(); }
    double area() const;
    /// Signed volume sum dot(v0, v1 x v2)/6; equals the enclosed volume for
    /// a closed mesh oriented with normals pointing toward increasing f.
    double signed_volume() const;
};

/// Marching-cubes level surface {f = h} on the periodic grid. Faces with
/// diagonal sign patterns are resolved by the asymptotic decider (sign of
/// the bilinear saddle value), so adjacent cells always agree; cell
/// polygons are traced around the cube boundary and fan-triangulated in
/// deterministic order. An empty mesh (h outside the sampled range) is
/// returned as such, not an error.
TriangleMesh extract_level_mesh(const ScalarField& field, double h);

/// Gradient statistics of a mesh: trilinear |Df| at triangle centroids.
struct SurfaceGradientStats {
    double min = 0.0;
    double median = 0.0;
    /// delta_reg = max(1e-6, 0.01 * median |Df|); "almost every h" made operational.
    double regularity_threshold() const;
    bool regular() const;
};

SurfaceGradientStats surface_gradient_stats(const ScalarField& field, const TriangleMesh& mesh);

/// Checked extraction: throws IrregularLevelError when the sampled
/// gradient on the surface drops below the regularity threshold.
TriangleMesh extract_surface(const ScalarField& field, double h);

struct CurvatureIntegrals {
    double int_H = 0.0;           ///< integral of H over the surface
    double int_H_weighted = 0.0;  ///< integral of (|Df|^2/(1+|Df|^2)) H
    double int_H_over_grad = 0.0; ///< integral of H/|Df| = V'(h)
};

/// Mean-curvature integrals with H = (tr(Hess)|Df|^2 - Df.Hess.Df)/|Df|^3
/// evaluated at triangle centroids from the trilinearly interpolated node
/// derivatives (positive for spheres with respect to the inner normal).
/// Throws IrregularLevelError when any centroid falls below the
/// regularity threshold.
CurvatureIntegrals mean_curvature_integrals(const ScalarField& field, const TriangleMesh& mesh);

/// Volume of the sublevel set {f < h} by per-cell occupancy: full and
/// empty cells are resolved from cached corner bounds, mixed cells by
/// classifying an 8^3 lattice of subcell centers against the trilinear
/// interpolant. Exactly monotone in h.
double sublevel_volume(const ScalarField& field, double h);

struct HeightRecord {
    double h = 0.0;
    bool regular = false;
    double area = 0.0;             ///< V(h)
    double sublevel_volume = 0.0;  ///< vol_T {f < h}
    double int_H = 0.0;
    double int_H_weighted = 0.0;
    double vprime_surface = 0.0;   ///< integral of H/|Df|
    double min_grad = 0.0;
    double median_grad = 0.0;
    double min_H = 0.0;
    double min_principal = 0.0;    ///< smallest principal curvature over centroids
    bool convex = false;           ///< min_principal >= -convexity tolerance
    std::size_t triangle_count = 0;
};

/// Per-height level-set records over a sorted height ladder. Heights can
/// be added later (the h0 search refines near its crossing); records stay
/// sorted by height.
class LevelSetProfile {
public:
    LevelSetProfile(const ScalarField& field, const std::vector<double>& heights,
                    double convexity_tol = 1e-6);

    const ScalarField& field() const { return *field_; }
    const std::vector<HeightRecord>& records() const { return records_; }
    /// Record at the given height, computing and inserting it if absent.
    const HeightRecord& ensure_height(double h);

    double min_height() const;
    double max_height() const;

private:
    const ScalarField* field_;
    double convexity_tol_;
    std::vector<HeightRecord> records_;

    HeightRecord compute_record(double h) const;
};

/// 129 uniform heights spanning [min f, 0].
std::vector<double> default_heights(const ScalarField& field, int count = 129);

/// Profile over the given heights; irregular heights are flagged, never
/// interpolated over, and never raised as errors here.
LevelSetProfile perimeter_profile(const ScalarField& field, const std::vector<double>& heights);

struct MassInequalityMargin {
    double h = 0.0;
    double weighted_integral = 0.0;
    double margin = 0.0;  ///< m - weighted integral
    bool pass = false;
};

/// Margins of m(f) >= weighted mean-curvature integral at every regular
/// height; pass means margin >= -rel_tol * m.
std::vector<MassInequalityMargin> check_mass_inequality(const GraphTorus& graph,
                                                        const LevelSetProfile& profile,
                                                        double rel_tol = 1e-3);

struct VprimeRecord {
    double h = 0.0;
    double vprime_fd = 0.0;       ///< centered quadratic-fit slope of V(h)
    bool fd_valid = false;        ///< enough consecutive regular heights
    double vprime_surface = 0.0;  ///< integral of H/|Df|
    double lower_bound_alpha = 0.0;    ///< (1/a)(int H - (1+a^-2) m) at the maximizing a
    bool alpha_defined = false;        ///< V > m^2/(16 pi)
    double lower_bound_minkowski = 0.0;///< (2/(3 sqrt 3)) m [4 sqrt(pi) V^(1/2)/m - 1]^(3/2)
    bool minkowski_applicable = false; ///< V > (1+xi)^2 m^2 / (16 pi)
};

/// The two V'(h) estimators plus the differential-inequality right-hand
/// sides they must dominate.
std::vector<VprimeRecord> vprime_estimates(const LevelSetProfile& profile, double m,
                                           double xi = 1.0);

struct IsoperimetricMargin {
    double h = 0.0;
    double bound = 0.0;   ///< V^(3/2) / (6 sqrt(pi))
    double volume = 0.0;  ///< sublevel volume
    double margin = 0.0;  ///< bound - volume
    double ratio = 0.0;   ///< bound / volume (1 at equality)
};

/// vol {f < h} <= V(h)^(3/2)/(6 sqrt(pi)) at regular heights.
std::vector<IsoperimetricMargin> isoperimetric_check(const LevelSetProfile& profile);

}  // namespace graphtori
