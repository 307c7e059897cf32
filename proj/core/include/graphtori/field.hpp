#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "graphtori/geometry.hpp"
#include "graphtori/lattice.hpp"

namespace graphtori {

/// Second-order central-difference stencil descriptor. Lattice-coordinate
/// differences are mapped to physical coordinates through A^-T / A^-1.
struct DerivativeStencil {
    int order = 2;
    double spacing = 0.0;  // 1/N in lattice coordinates
    Mat3 inv_transform;    // A^-1
};

/// Periodic scalar field sampled on an N^3 grid in lattice coordinates,
/// sample(i,j,k) = f(A * (i/N, j/N, k/N)). Index wrapping is the torus
/// quotient. Immutable after construction; derivative arrays are computed
/// once on first use and shared afterwards, so all accessors are
/// const and safe to call concurrently.
class ScalarField {
public:
    ScalarField(FlatTorus torus, int n, std::vector<double> samples);

    const FlatTorus& torus() const { return torus_; }
    int n() const { return n_; }
    std::size_t node_count() const { return samples_.size(); }
    const std::vector<double>& samples() const { return samples_; }
    DerivativeStencil stencil() const { return {2, 1.0 / n_, torus_.inverse_matrix()}; }

    std::size_t index(int i, int j, int k) const {
        const int n = n_;
        i %= n; if (i < 0) i += n;
        j %= n; if (j < 0) j += n;
        k %= n; if (k < 0) k += n;
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    double value(int i, int j, int k) const { return samples_[index(i, j, k)]; }

    double max_value() const { return max_; }
    double min_value() const { return min_; }
    /// max(|min f|, |max f|); the length scale used by relative tolerances.
    double amplitude() const;

    /// Physical-coordinate gradient Df at every node (A^-T times the
    /// lattice central difference); second-order accurate for C^4 fields.
    const std::vector<Vec3>& gradient() const;

    /// Physical-coordinate Hessian at every node, symmetric by construction.
    const std::vector<Sym3>& hessian() const;

    /// Trilinear interpolation of the samples at a lattice point (wrapped).
    double interpolate(const Vec3& lambda) const;
    /// Trilinear interpolation of the node gradient field.
    Vec3 interpolate_gradient(const Vec3& lambda) const;
    /// Trilinear interpolation of the node Hessian field.
    Sym3 interpolate_hessian(const Vec3& lambda) const;

private:
    FlatTorus torus_;
    int n_;
    std::vector<double> samples_;
    double min_ = 0.0, max_ = 0.0;

    struct Derivatives;
    std::shared_ptr<const Derivatives> derivatives() const;
    mutable std::shared_ptr<const Derivatives> derivatives_;
};

/// (det A / N^3) * sum(values): trapezoidal rule on the periodic grid,
/// exact for trigonometric polynomials below the Nyquist band.
double integrate(const std::vector<double>& node_values, const FlatTorus& torus);

/// Compensated (Kahan) sum used by the integrators.
double kahan_sum(const std::vector<double>& values);

// ---- Built-in field families -------------------------------------------

/// f = -depth * phi(|x - x_c|/radius), phi(s) = (1-s^2)^5 on [0,1), 0 outside:
/// a C^4 well supported strictly inside the fundamental domain. Level sets
/// are round spheres, strictly mean convex and outer minimizing.
/// center is given in lattice coordinates. Throws ParameterError if the
/// support ball does not fit inside the domain.
ScalarField make_radial_well(const FlatTorus& torus, int n, double depth, double radius,
                             const Vec3& center_lattice = {0.5, 0.5, 0.5});

/// f = amplitude * (cos(2 pi lambda_1) - 1); a one-dimensional profile.
ScalarField make_cosine_1d(const FlatTorus& torus, int n, double amplitude);

/// Deterministic band-limited trigonometric field with modes |k|_inf <= max_mode,
/// scaled to the requested amplitude. Same seed, same field, on any platform.
ScalarField make_random_trig(const FlatTorus& torus, int n, std::uint64_t seed,
                             int max_mode = 3, double amplitude = 0.1);

/// Raw little-endian float64 N^3 array, row-major with the third lattice
/// index fastest. Throws ConfigError on size mismatch.
ScalarField load_raw_field(const FlatTorus& torus, int n, const std::string& path);

// ---- Radial well closed forms (shared with tests and oracles) -----------

/// phi(s) = (1-s^2)^5 for s in [0,1), else 0.
double well_profile(double s);
double well_profile_d1(double s);
double well_profile_d2(double s);
/// Level radius r(h) with f(r) = -depth*phi(r/radius) = h, for h in (-depth, 0).
double well_level_radius(double depth, double radius, double h);

// ---- Class-G membership diagnostics --------------------------------------

struct MembershipTolerances {
    double tol_max = -1.0;      ///< negative means 1e-10 * amplitude
    double tol_bdy = -1.0;      ///< negative means 1e-10 * amplitude
    double convexity_tol = 1e-6;
    int heights = 33;           ///< sampled heights for the level-set checks
};

struct MembershipReport {
    bool max_zero = false;        ///< max f = 0 within tol_max
    double max_zero_margin = 0.0;
    bool boundary_zero = false;   ///< f = 0 on the lattice faces within tol_bdy
    double boundary_margin = 0.0;
    bool mean_convex = false;     ///< min H > 0 over regular sampled heights
    double min_mean_curvature = 0.0;
    bool convex_surrogate = false;  ///< all principal curvatures >= -tol
    double min_principal_curvature = 0.0;
    int regular_heights = 0;
    bool vacuous_levels = false;  ///< no regular interior heights to check
    bool all_pass() const { return max_zero && boundary_zero && mean_convex && convex_surrogate; }
};

/// Diagnostic only: never throws, reports flags and margins. The
/// outer-minimizing condition is replaced by the convexity surrogate
/// (all principal curvatures nonnegative up to tolerance) and reported
/// as such, never as the full condition.
MembershipReport class_membership(const ScalarField& field,
                                  const MembershipTolerances& tol = {});

}  // namespace graphtori
