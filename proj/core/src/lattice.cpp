#include "graphtori/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "graphtori/errors.hpp"

namespace graphtori {

namespace {

double wrap_unit(double t) {
    double w = t - std::floor(t);
    if (w >= 1.0) w -= 1.0;  // guard against floor rounding at the seam
    return w;
}

}  // namespace

FlatTorus::FlatTorus(const Vec3& a1, const Vec3& a2, const Vec3& a3) {
    A_.c = {a1, a2, a3};
    det_ = det(A_);
    if (!(det_ > 0.0)) {
        std::ostringstream msg;
        msg << "invalid lattice: det(a1,a2,a3) = " << det_ << " must be positive";
        throw InvalidLatticeError(msg.str());
    }
    const double l1 = norm(a1), l2 = norm(a2), l3 = norm(a3);
    const double lmax = std::max({l1, l2, l3});
    const double lmin = std::min({l1, l2, l3});
    if (lmax > 10.0 * lmin) {
        std::ostringstream msg;
        msg << "invalid lattice: generator length ratio " << lmax / lmin
            << " exceeds the supported anisotropy bound 10";
        throw InvalidLatticeError(msg.str());
    }
    invA_ = inverse(A_);

    translates_.reserve(125);
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            for (int k = -2; k <= 2; ++k)
                translates_.push_back(matvec(A_, Vec3{double(i), double(j), double(k)}));

    injectivity_radius_ = compute_injectivity_radius();
}

double FlatTorus::compute_injectivity_radius() const {
    const double sigma_min = singular_values(A_)[0];
    for (int K = 10; K <= 40; K *= 2) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = -K; i <= K; ++i)
            for (int j = -K; j <= K; ++j)
                for (int k = -K; k <= K; ++k) {
                    if (i == 0 && j == 0 && k == 0) continue;
                    best = std::min(best, norm(matvec(A_, Vec3{double(i), double(j), double(k)})));
                }
        // Any excluded v has |v|_inf >= K+1, hence |Av| >= sigma_min*(K+1).
        if (sigma_min * (K + 1) > best) return 0.5 * best;
    }
    throw InvalidLatticeError("shortest-vector search did not certify within K = 40");
}

double FlatTorus::distance(const Vec3& x, const Vec3& y) const {
    Vec3 lx = to_lattice(x), ly = to_lattice(y);
    for (int i = 0; i < 3; ++i) {
        lx[i] = wrap_unit(lx[i]);
        ly[i] = wrap_unit(ly[i]);
    }
    const Vec3 px = to_physical(lx), py = to_physical(ly);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& t : translates_) best = std::min(best, norm(px - (py + t)));
    return best;
}

DiameterEstimate FlatTorus::diameter(int resolution) const {
    if (resolution < 8) throw ParameterError("diameter resolution must be >= 8");
    const Vec3 center = domain_center();
    double best = 0.0;
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            for (int k = 0; k < resolution; ++k) {
                const Vec3 lambda{double(i) / resolution, double(j) / resolution,
                                  double(k) / resolution};
                best = std::max(best, distance(to_physical(lambda), center));
            }
    const double cell_diag = norm(matvec(A_, Vec3{1, 1, 1})) / resolution;
    return {best, cell_diag};
}

double FlatTorus::boundary_area() const {
    const auto f = face_areas();
    return 2.0 * (f[0] + f[1] + f[2]);
}

std::array<double, 3> FlatTorus::face_areas() const {
    return {norm(cross(A_.c[0], A_.c[1])), norm(cross(A_.c[1], A_.c[2])),
            norm(cross(A_.c[0], A_.c[2]))};
}

}  // namespace graphtori
