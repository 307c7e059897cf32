#pragma once

#include <array>
#include <vector>

#include "graphtori/geometry.hpp"

namespace graphtori {

struct DiameterEstimate {
    double value = 0.0;        ///< max over sampled points of distance to the cell center
    double uncertainty = 0.0;  ///< one grid-cell diagonal; the true diameter lies in [value, value+uncertainty]
};

/// A flat 3-torus R^3 / Gamma described by three positively oriented
/// lattice generators. Immutable after construction; all member
/// functions are pure and safe to call concurrently.
class FlatTorus {
public:
    /// Throws InvalidLatticeError if det(a1,a2,a3) <= 0 or if the
    /// generator lengths are too anisotropic for the bounded
    /// shortest-vector search (ratio > 10).
    FlatTorus(const Vec3& a1, const Vec3& a2, const Vec3& a3);

    const Mat3& matrix() const { return A_; }
    const Mat3& inverse_matrix() const { return invA_; }
    Vec3 generator(int i) const { return A_.c[static_cast<std::size_t>(i)]; }
    double volume() const { return det_; }

    /// Center of the fundamental domain D, A*(1/2,1/2,1/2).
    Vec3 domain_center() const { return matvec(A_, Vec3{0.5, 0.5, 0.5}); }

    /// Quotient distance d_T(p(x), p(y)); minimizes |x - (y + Av)| over
    /// lattice translates. Points are reduced to the fundamental domain
    /// first, after which offsets in {-2,...,2}^3 suffice.
    double distance(const Vec3& x, const Vec3& y) const;

    /// Half the length of the shortest nonzero lattice vector.
    double injectivity_radius() const { return injectivity_radius_; }

    /// Grid estimate of diam(T) = circumradius of the Voronoi cell:
    /// max over a resolution^3 grid of distance to the domain center.
    /// Converges from below; resolution must be >= 8.
    DiameterEstimate diameter(int resolution) const;

    /// H^2(boundary of D): twice the sum of the three face areas.
    double boundary_area() const;

    /// {|a1 x a2|, |a2 x a3|, |a1 x a3|}; coordinate-face surrogates for
    /// the smallest closed minimal surface area.
    std::array<double, 3> face_areas() const;

    /// Map lattice coordinates to a physical point, x = A*lambda.
    Vec3 to_physical(const Vec3& lambda) const { return matvec(A_, lambda); }

    /// Map a physical point to lattice coordinates, lambda = A^-1 x.
    Vec3 to_lattice(const Vec3& x) const { return matvec(invA_, x); }

private:
    Mat3 A_;
    Mat3 invA_;
    double det_ = 0.0;
    double injectivity_radius_ = 0.0;
    std::vector<Vec3> translates_;  // A*v for v in {-2..2}^3

    double compute_injectivity_radius() const;
};

inline FlatTorus make_torus(const Vec3& a1, const Vec3& a2, const Vec3& a3) {
    return FlatTorus(a1, a2, a3);
}

}  // namespace graphtori
