#include "graphtori/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "graphtori/errors.hpp"

namespace graphtori {

namespace {

// Cube corners are numbered (di<<2)|(dj<<1)|dk over {0,1}^3.
// Twelve edges as corner pairs, grouped by axis.
constexpr int kEdgeCorner[12][2] = {
    {0, 1}, {2, 3}, {4, 5}, {6, 7},   // along k
    {0, 2}, {1, 3}, {4, 6}, {5, 7},   // along j
    {0, 4}, {1, 5}, {2, 6}, {3, 7},   // along i
};

// Six faces: cyclic corner order [p0,p1,p2,p3] and the edges between
// consecutive corners [E01,E12,E23,E30].
struct FaceDef {
    int corner[4];
    int edge[4];
};
constexpr FaceDef kFaces[6] = {
    {{0, 1, 3, 2}, {0, 5, 1, 4}},    // i = 0
    {{4, 5, 7, 6}, {2, 7, 3, 6}},    // i = 1
    {{0, 1, 5, 4}, {0, 9, 2, 8}},    // j = 0
    {{2, 3, 7, 6}, {1, 11, 3, 10}},  // j = 1
    {{0, 2, 6, 4}, {4, 10, 6, 8}},   // k = 0
    {{1, 3, 7, 5}, {5, 11, 7, 9}},   // k = 1
};

struct Scanner {
    const ScalarField& field;
    int n;
    std::vector<double> cellmin, cellmax;

    explicit Scanner(const ScalarField& f) : field(f), n(f.n()) {
        const auto& s = f.samples();
        const std::size_t count = s.size();
        cellmin.resize(count);
        cellmax.resize(count);
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1) % n;
            for (int j = 0; j < n; ++j) {
                const int jp = (j + 1) % n;
                for (int k = 0; k < n; ++k) {
                    const int kp = (k + 1) % n;
                    const double v[8] = {
                        s[idx(i, j, k)],  s[idx(i, j, kp)],  s[idx(i, jp, k)],  s[idx(i, jp, kp)],
                        s[idx(ip, j, k)], s[idx(ip, j, kp)], s[idx(ip, jp, k)], s[idx(ip, jp, kp)]};
                    const auto [mn, mx] = std::minmax_element(v, v + 8);
                    cellmin[idx(i, j, k)] = *mn;
                    cellmax[idx(i, j, k)] = *mx;
                }
            }
        }
    }

    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    void cell_corners(int i, int j, int k, double h, double g[8]) const {
        const auto& s = field.samples();
        const int ip = (i + 1) % n, jp = (j + 1) % n, kp = (k + 1) % n;
        g[0] = s[idx(i, j, k)] - h;
        g[1] = s[idx(i, j, kp)] - h;
        g[2] = s[idx(i, jp, k)] - h;
        g[3] = s[idx(i, jp, kp)] - h;
        g[4] = s[idx(ip, j, k)] - h;
        g[5] = s[idx(ip, j, kp)] - h;
        g[6] = s[idx(ip, jp, k)] - h;
        g[7] = s[idx(ip, jp, kp)] - h;
    }

    TriangleMesh extract(double h) const;
    double occupancy_volume(double h) const;
};

/// Triangulate one cell: trace the face segments into closed polygons and
/// fan them. Returns triangles in (unwrapped) lattice coordinates.
void triangulate_cell(const double g[8], int ci, int cj, int ck, int n, const Mat3& A,
                      const Mat3& invA, std::vector<Triangle>& out) {
    bool inside[8];
    int mask = 0;
    for (int c = 0; c < 8; ++c) {
        inside[c] = g[c] < 0.0;
        if (inside[c]) mask |= 1 << c;
    }
    if (mask == 0 || mask == 255) return;

    // Corner offsets in lattice units.
    auto corner_lat = [&](int c) {
        return Vec3{double(ci + ((c >> 2) & 1)) / n, double(cj + ((c >> 1) & 1)) / n,
                    double(ck + (c & 1)) / n};
    };

    // Edge crossings.
    Vec3 crossing[12];
    bool crossed[12] = {};
    for (int e = 0; e < 12; ++e) {
        const int a = kEdgeCorner[e][0], b = kEdgeCorner[e][1];
        if (inside[a] == inside[b]) continue;
        crossed[e] = true;
        const double t = g[a] / (g[a] - g[b]);
        const Vec3 la = corner_lat(a), lb = corner_lat(b);
        crossing[e] = la + (lb - la) * t;
    }

    // Face segments -> neighbor pairs on the crossing graph.
    int nbr[12][2];
    int deg[12] = {};
    auto link = [&](int ea, int eb) {
        nbr[ea][deg[ea]++] = eb;
        nbr[eb][deg[eb]++] = ea;
    };
    for (const FaceDef& f : kFaces) {
        int slots[4], nc = 0;
        for (int s = 0; s < 4; ++s)
            if (crossed[f.edge[s]]) slots[nc++] = s;
        if (nc == 0) continue;
        if (nc == 2) {
            link(f.edge[slots[0]], f.edge[slots[1]]);
            continue;
        }
        // Diagonal pattern: all four edges cross. Resolve connectivity by
        // the sign of the bilinear saddle value on the face.
        const double g0 = g[f.corner[0]], g1 = g[f.corner[1]];
        const double g2 = g[f.corner[2]], g3 = g[f.corner[3]];
        const double den = g0 + g2 - g1 - g3;
        const double saddle = (den != 0.0) ? (g0 * g2 - g1 * g3) / den : 1.0;
        const bool inside02 = inside[f.corner[0]];  // which diagonal is inside
        const bool connected = saddle < 0.0;
        bool around_odd;  // segments hug corners p1 and p3
        if (inside02) {
            around_odd = connected;
        } else {
            around_odd = !connected;
        }
        if (around_odd) {
            link(f.edge[0], f.edge[1]);
            link(f.edge[2], f.edge[3]);
        } else {
            link(f.edge[3], f.edge[0]);
            link(f.edge[1], f.edge[2]);
        }
    }

    // Average lattice-coordinate gradient of the cell, mapped to physical
    // coordinates; used only to orient the polygons toward increasing f.
    Vec3 gl{0, 0, 0};
    for (int c = 0; c < 8; ++c) {
        const double s = g[c] * 0.25;
        gl.x += ((c >> 2) & 1) ? s : -s;
        gl.y += ((c >> 1) & 1) ? s : -s;
        gl.z += (c & 1) ? s : -s;
    }
    const Vec3 gdir = matTvec(invA, gl);

    bool used[12] = {};
    for (int start = 0; start < 12; ++start) {
        if (!crossed[start] || used[start]) continue;
        int cycle[12], len = 0;
        int cur = start, prev = -1;
        do {
            cycle[len++] = cur;
            used[cur] = true;
            const int next = (nbr[cur][0] == prev) ? nbr[cur][1] : nbr[cur][0];
            prev = cur;
            cur = next;
        } while (cur != start && len < 12);
        if (len < 3) continue;

        // Newell normal in physical coordinates.
        Vec3 nrm{0, 0, 0};
        for (int s = 0; s < len; ++s) {
            const Vec3 a = matvec(A, crossing[cycle[s]]);
            const Vec3 b = matvec(A, crossing[cycle[(s + 1) % len]]);
            nrm += cross(a, b);
        }
        const bool flip = dot(nrm, gdir) < 0.0;

        for (int s = 1; s + 1 < len; ++s) {
            int i0 = 0, i1 = s, i2 = s + 1;
            if (flip) std::swap(i1, i2);
            Triangle tri;
            tri.lat = {crossing[cycle[i0]], crossing[cycle[i1]], crossing[cycle[i2]]};
            tri.phys = {matvec(A, tri.lat[0]), matvec(A, tri.lat[1]), matvec(A, tri.lat[2])};
            out.push_back(tri);
        }
    }
}

TriangleMesh Scanner::extract(double h) const {
    TriangleMesh mesh;
    const Mat3& A = field.torus().matrix();
    const Mat3& invA = field.torus().inverse_matrix();
    double g[8];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t c = idx(i, j, k);
                if (cellmin[c] >= h || cellmax[c] < h) continue;
                cell_corners(i, j, k, h, g);
                triangulate_cell(g, i, j, k, n, A, invA, mesh.triangles);
            }
    return mesh;
}

double Scanner::occupancy_volume(double h) const {
    constexpr int kSub = 8;
    const double cell_vol = field.torus().volume() / (double(n) * n * n);
    double full_cells = 0.0;
    double fraction_sum = 0.0;
    double g[8];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t c = idx(i, j, k);
                if (cellmin[c] >= h) continue;
                if (cellmax[c] < h) {
                    full_cells += 1.0;
                    continue;
                }
                cell_corners(i, j, k, h, g);
                // classify subcell centers against the trilinear interpolant
                int count = 0;
                for (int a = 0; a < kSub; ++a) {
                    const double u = (a + 0.5) / kSub;
                    const double c00 = g[0] + (g[4] - g[0]) * u;
                    const double c01 = g[1] + (g[5] - g[1]) * u;
                    const double c10 = g[2] + (g[6] - g[2]) * u;
                    const double c11 = g[3] + (g[7] - g[3]) * u;
                    for (int b = 0; b < kSub; ++b) {
                        const double v = (b + 0.5) / kSub;
                        const double d0 = c00 + (c10 - c00) * v;
                        const double d1 = c01 + (c11 - c01) * v;
                        for (int d = 0; d < kSub; ++d) {
                            const double w = (d + 0.5) / kSub;
                            if (d0 + (d1 - d0) * w < 0.0) ++count;
                        }
                    }
                }
                fraction_sum += double(count) / (kSub * kSub * kSub);
            }
    return (full_cells + fraction_sum) * cell_vol;
}

}  // namespace

double TriangleMesh::area() const {
    double sum = 0.0, comp = 0.0;
    for (const Triangle& t : triangles) {
        const double a = 0.5 * norm(cross(t.phys[1] - t.phys[0], t.phys[2] - t.phys[0]));
        const double y = a - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

double TriangleMesh::signed_volume() const {
    double sum = 0.0;
    for (const Triangle& t : triangles)
        sum += dot(t.phys[0], cross(t.phys[1], t.phys[2])) / 6.0;
    return sum;
}

TriangleMesh extract_level_mesh(const ScalarField& field, double h) {
    return Scanner(field).extract(h);
}

double SurfaceGradientStats::regularity_threshold() const {
    return std::max(1e-6, 0.01 * median);
}

bool SurfaceGradientStats::regular() const { return min > regularity_threshold(); }

SurfaceGradientStats surface_gradient_stats(const ScalarField& field, const TriangleMesh& mesh) {
    SurfaceGradientStats stats;
    if (mesh.empty()) return stats;
    std::vector<double> mags;
    mags.reserve(mesh.triangles.size());
    for (const Triangle& t : mesh.triangles) {
        const Vec3 centroid = (t.lat[0] + t.lat[1] + t.lat[2]) / 3.0;
        mags.push_back(norm(field.interpolate_gradient(centroid)));
    }
    stats.min = *std::min_element(mags.begin(), mags.end());
    auto mid = mags.begin() + mags.size() / 2;
    std::nth_element(mags.begin(), mid, mags.end());
    stats.median = *mid;
    return stats;
}

TriangleMesh extract_surface(const ScalarField& field, double h) {
    TriangleMesh mesh = extract_level_mesh(field, h);
    if (mesh.empty()) return mesh;
    const auto stats = surface_gradient_stats(field, mesh);
    if (!stats.regular()) {
        std::ostringstream msg;
        msg << "level " << h << " is not regular: min |Df| = " << stats.min
            << " <= threshold " << stats.regularity_threshold();
        throw IrregularLevelError(msg.str());
    }
    return mesh;
}

CurvatureIntegrals mean_curvature_integrals(const ScalarField& field, const TriangleMesh& mesh) {
    CurvatureIntegrals out;
    if (mesh.empty()) return out;
    const auto stats = surface_gradient_stats(field, mesh);
    const double delta_reg = stats.regularity_threshold();
    for (const Triangle& t : mesh.triangles) {
        const Vec3 centroid = (t.lat[0] + t.lat[1] + t.lat[2]) / 3.0;
        const double area = 0.5 * norm(cross(t.phys[1] - t.phys[0], t.phys[2] - t.phys[0]));
        const Vec3 grad = field.interpolate_gradient(centroid);
        const double gn = norm(grad);
        if (gn <= delta_reg) {
            std::ostringstream msg;
            msg << "irregular centroid on level surface: |Df| = " << gn << " <= " << delta_reg;
            throw IrregularLevelError(msg.str());
        }
        const Sym3 hess = field.interpolate_hessian(centroid);
        const double g2 = gn * gn;
        const double H = (hess.trace() * g2 - dot(grad, hess.apply(grad))) / (g2 * gn);
        out.int_H += H * area;
        out.int_H_weighted += H * area * g2 / (1.0 + g2);
        out.int_H_over_grad += H * area / gn;
    }
    return out;
}

double sublevel_volume(const ScalarField& field, double h) {
    return Scanner(field).occupancy_volume(h);
}

// ---- profile ---------------------------------------------------------------

namespace {

struct CentroidSample {
    double area, grad_norm, H, kmin;
};

/// Smaller principal curvature at a centroid: eigenvalues of the shape
/// operator restricted to an orthonormal tangent basis.
double min_principal_curvature(const Vec3& grad, const Sym3& hess) {
    const double gn = norm(grad);
    const Vec3 nvec = grad / gn;
    // tangent basis by Gram-Schmidt against the least-aligned axis
    Vec3 seed = std::abs(nvec.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 t1 = seed - nvec * dot(seed, nvec);
    t1 = t1 / norm(t1);
    const Vec3 t2 = cross(nvec, t1);
    const double s11 = dot(t1, hess.apply(t1)) / gn;
    const double s22 = dot(t2, hess.apply(t2)) / gn;
    const double s12 = dot(t1, hess.apply(t2)) / gn;
    const double mean = 0.5 * (s11 + s22);
    const double disc = std::sqrt(0.25 * (s11 - s22) * (s11 - s22) + s12 * s12);
    return mean - disc;
}

}  // namespace

LevelSetProfile::LevelSetProfile(const ScalarField& field, const std::vector<double>& heights,
                                 double convexity_tol)
    : field_(&field), convexity_tol_(convexity_tol) {
    std::vector<double> sorted = heights;
    std::sort(sorted.begin(), sorted.end());
    records_.reserve(sorted.size());
    for (double h : sorted) {
        if (!records_.empty() && h == records_.back().h) continue;
        records_.push_back(compute_record(h));
    }
}

HeightRecord LevelSetProfile::compute_record(double h) const {
    HeightRecord rec;
    rec.h = h;
    const TriangleMesh mesh = extract_level_mesh(*field_, h);
    rec.triangle_count = mesh.triangles.size();
    rec.sublevel_volume = sublevel_volume(*field_, h);
    if (mesh.empty()) return rec;

    std::vector<CentroidSample> samples;
    samples.reserve(mesh.triangles.size());
    std::vector<double> mags;
    mags.reserve(mesh.triangles.size());
    for (const Triangle& t : mesh.triangles) {
        const Vec3 centroid = (t.lat[0] + t.lat[1] + t.lat[2]) / 3.0;
        const double area = 0.5 * norm(cross(t.phys[1] - t.phys[0], t.phys[2] - t.phys[0]));
        const Vec3 grad = field_->interpolate_gradient(centroid);
        const double gn = norm(grad);
        rec.area += area;
        mags.push_back(gn);
        if (gn < 1e-300) continue;  // contributes to irregularity, not to integrals
        const Sym3 hess = field_->interpolate_hessian(centroid);
        const double g2 = gn * gn;
        const double H = (hess.trace() * g2 - dot(grad, hess.apply(grad))) / (g2 * gn);
        samples.push_back({area, gn, H, min_principal_curvature(grad, hess)});
    }
    rec.min_grad = *std::min_element(mags.begin(), mags.end());
    auto mid = mags.begin() + mags.size() / 2;
    std::nth_element(mags.begin(), mid, mags.end());
    rec.median_grad = *mid;
    const double delta_reg = std::max(1e-6, 0.01 * rec.median_grad);
    rec.regular = rec.min_grad > delta_reg;

    rec.min_H = std::numeric_limits<double>::infinity();
    rec.min_principal = std::numeric_limits<double>::infinity();
    for (const CentroidSample& s : samples) {
        rec.int_H += s.H * s.area;
        rec.int_H_weighted += s.H * s.area * s.grad_norm * s.grad_norm /
                              (1.0 + s.grad_norm * s.grad_norm);
        rec.vprime_surface += s.H * s.area / s.grad_norm;
        rec.min_H = std::min(rec.min_H, s.H);
        rec.min_principal = std::min(rec.min_principal, s.kmin);
    }
    rec.convex = rec.min_principal >= -convexity_tol_;
    return rec;
}

const HeightRecord& LevelSetProfile::ensure_height(double h) {
    auto it = std::lower_bound(records_.begin(), records_.end(), h,
                               [](const HeightRecord& r, double v) { return r.h < v; });
    const double scale = std::max(std::abs(field_->min_value()), 1e-30);
    if (it != records_.end() && std::abs(it->h - h) <= 1e-14 * scale) return *it;
    if (it != records_.begin()) {
        auto prev = std::prev(it);
        if (std::abs(prev->h - h) <= 1e-14 * scale) return *prev;
    }
    return *records_.insert(it, compute_record(h));
}

double LevelSetProfile::min_height() const { return records_.front().h; }
double LevelSetProfile::max_height() const { return records_.back().h; }

std::vector<double> default_heights(const ScalarField& field, int count) {
    if (count < 2) throw ParameterError("height count must be >= 2");
    std::vector<double> heights(count);
    const double lo = field.min_value();
    for (int i = 0; i < count; ++i)
        heights[i] = lo + (0.0 - lo) * double(i) / (count - 1);
    return heights;
}

LevelSetProfile perimeter_profile(const ScalarField& field, const std::vector<double>& heights) {
    return LevelSetProfile(field, heights);
}

std::vector<MassInequalityMargin> check_mass_inequality(const GraphTorus& graph,
                                                        const LevelSetProfile& profile,
                                                        double rel_tol) {
    std::vector<MassInequalityMargin> out;
    const double m = graph.excess();
    for (const HeightRecord& rec : profile.records()) {
        if (!rec.regular) continue;
        MassInequalityMargin mm;
        mm.h = rec.h;
        mm.weighted_integral = rec.int_H_weighted;
        mm.margin = m - rec.int_H_weighted;
        mm.pass = mm.margin >= -rel_tol * m;
        out.push_back(mm);
    }
    return out;
}

std::vector<VprimeRecord> vprime_estimates(const LevelSetProfile& profile, double m, double xi) {
    const double fourσ = 4.0 * std::sqrt(std::numbers::pi);
    std::vector<const HeightRecord*> regular;
    for (const HeightRecord& rec : profile.records())
        if (rec.regular) regular.push_back(&rec);

    std::vector<VprimeRecord> out;
    for (std::size_t i = 0; i < regular.size(); ++i) {
        const HeightRecord& rec = *regular[i];
        VprimeRecord v;
        v.h = rec.h;
        v.vprime_surface = rec.vprime_surface;

        // centered least-squares quadratic over up to 7 nearby regular heights
        const std::size_t lo = i >= 3 ? i - 3 : 0;
        const std::size_t hi = std::min(i + 3, regular.size() - 1);
        if (hi - lo + 1 >= 3) {
            double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
            for (std::size_t k = lo; k <= hi; ++k) {
                const double x = regular[k]->h - rec.h;
                const double y = regular[k]->area;
                s0 += 1; s1 += x; s2 += x * x; s3 += x * x * x; s4 += x * x * x * x;
                t0 += y; t1 += x * y; t2 += x * x * y;
            }
            // solve [s0 s1 s2; s1 s2 s3; s2 s3 s4] [a b c]^T = [t0 t1 t2]^T for b
            Mat3 mfit;
            mfit(0, 0) = s0; mfit(0, 1) = s1; mfit(0, 2) = s2;
            mfit(1, 0) = s1; mfit(1, 1) = s2; mfit(1, 2) = s3;
            mfit(2, 0) = s2; mfit(2, 1) = s3; mfit(2, 2) = s4;
            if (std::abs(det(mfit)) > 1e-30) {
                const Vec3 coeff = matvec(inverse(mfit), Vec3{t0, t1, t2});
                v.vprime_fd = coeff.y;
                v.fd_valid = true;
            }
        }

        if (m > 0.0) {
            const double V = rec.area;
            if (V > m * m / (16.0 * std::numbers::pi)) {
                const double alpha = std::sqrt(3.0 * m / (fourσ * std::sqrt(V) - m));
                v.lower_bound_alpha =
                    (rec.int_H - (1.0 + 1.0 / (alpha * alpha)) * m) / alpha;
                v.alpha_defined = true;
            }
            const double thr = (1.0 + xi) * (1.0 + xi) * m * m / (16.0 * std::numbers::pi);
            if (V > thr) {
                const double u = fourσ * std::sqrt(V) / m - 1.0;
                v.lower_bound_minkowski = 2.0 / (3.0 * std::sqrt(3.0)) * m * std::pow(u, 1.5);
                v.minkowski_applicable = true;
            }
        }
        out.push_back(v);
    }
    return out;
}

std::vector<IsoperimetricMargin> isoperimetric_check(const LevelSetProfile& profile) {
    std::vector<IsoperimetricMargin> out;
    const double c = 1.0 / (6.0 * std::sqrt(std::numbers::pi));
    for (const HeightRecord& rec : profile.records()) {
        if (!rec.regular) continue;
        IsoperimetricMargin im;
        im.h = rec.h;
        im.bound = c * std::pow(rec.area, 1.5);
        im.volume = rec.sublevel_volume;
        im.margin = im.bound - im.volume;
        im.ratio = im.volume > 0.0 ? im.bound / im.volume : 0.0;
        out.push_back(im);
    }
    return out;
}

}  // namespace graphtori
