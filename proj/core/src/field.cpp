#include "graphtori/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "graphtori/errors.hpp"

namespace graphtori {

struct ScalarField::Derivatives {
    std::vector<Vec3> gradient;
    std::vector<Sym3> hessian;
};

ScalarField::ScalarField(FlatTorus torus, int n, std::vector<double> samples)
    : torus_(std::move(torus)), n_(n), samples_(std::move(samples)) {
    if (n_ < 8) throw ParameterError("grid resolution must be >= 8");
    const std::size_t expected = static_cast<std::size_t>(n_) * n_ * n_;
    if (samples_.size() != expected) {
        std::ostringstream msg;
        msg << "sample count " << samples_.size() << " does not match n^3 = " << expected;
        throw ParameterError(msg.str());
    }
    auto [mn, mx] = std::minmax_element(samples_.begin(), samples_.end());
    min_ = *mn;
    max_ = *mx;
}

double ScalarField::amplitude() const {
    return std::max(std::abs(min_), std::abs(max_));
}

std::shared_ptr<const ScalarField::Derivatives> ScalarField::derivatives() const {
    static std::mutex mtx;
    std::scoped_lock lock(mtx);
    if (derivatives_) return derivatives_;

    auto d = std::make_shared<Derivatives>();
    const int n = n_;
    const double h1 = n / 2.0;   // 1 / (2*spacing)
    const double h2 = double(n) * n;
    const Mat3& B = torus_.inverse_matrix();

    d->gradient.resize(samples_.size());
    d->hessian.resize(samples_.size());

    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n, im = (i + n - 1) % n;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1) % n, jm = (j + n - 1) % n;
            for (int k = 0; k < n; ++k) {
                const int kp = (k + 1) % n, km = (k + n - 1) % n;
                const std::size_t c = index(i, j, k);
                const double f0 = samples_[c];

                const double fip = value(ip, j, k), fim = value(im, j, k);
                const double fjp = value(i, jp, k), fjm = value(i, jm, k);
                const double fkp = value(i, j, kp), fkm = value(i, j, km);

                const Vec3 gl{(fip - fim) * h1, (fjp - fjm) * h1, (fkp - fkm) * h1};

                Sym3 hl;
                hl.xx = (fip - 2.0 * f0 + fim) * h2;
                hl.yy = (fjp - 2.0 * f0 + fjm) * h2;
                hl.zz = (fkp - 2.0 * f0 + fkm) * h2;
                hl.xy = (value(ip, jp, k) - value(ip, jm, k) - value(im, jp, k) +
                         value(im, jm, k)) * (h2 / 4.0);
                hl.xz = (value(ip, j, kp) - value(ip, j, km) - value(im, j, kp) +
                         value(im, j, km)) * (h2 / 4.0);
                hl.yz = (value(i, jp, kp) - value(i, jp, km) - value(i, jm, kp) +
                         value(i, jm, km)) * (h2 / 4.0);

                d->gradient[c] = matTvec(B, gl);  // A^-T * grad_lattice

                // B^T * H_lattice * B
                const Vec3 u0 = hl.apply(B.c[0]);
                const Vec3 u1 = hl.apply(B.c[1]);
                const Vec3 u2 = hl.apply(B.c[2]);
                Sym3 hp;
                hp.xx = dot(B.c[0], u0);
                hp.yy = dot(B.c[1], u1);
                hp.zz = dot(B.c[2], u2);
                hp.xy = dot(B.c[0], u1);
                hp.xz = dot(B.c[0], u2);
                hp.yz = dot(B.c[1], u2);
                d->hessian[c] = hp;
            }
        }
    }
    derivatives_ = std::move(d);
    return derivatives_;
}

const std::vector<Vec3>& ScalarField::gradient() const { return derivatives()->gradient; }
const std::vector<Sym3>& ScalarField::hessian() const { return derivatives()->hessian; }

namespace {

struct TrilinearWeights {
    int i0, j0, k0, i1, j1, k1;
    double wx, wy, wz;
};

TrilinearWeights trilinear_setup(int n, const Vec3& lambda) {
    TrilinearWeights w{};
    const double sx = lambda.x - std::floor(lambda.x);
    const double sy = lambda.y - std::floor(lambda.y);
    const double sz = lambda.z - std::floor(lambda.z);
    const double gx = sx * n, gy = sy * n, gz = sz * n;
    w.i0 = static_cast<int>(gx) % n;
    w.j0 = static_cast<int>(gy) % n;
    w.k0 = static_cast<int>(gz) % n;
    w.i1 = (w.i0 + 1) % n;
    w.j1 = (w.j0 + 1) % n;
    w.k1 = (w.k0 + 1) % n;
    w.wx = gx - std::floor(gx);
    w.wy = gy - std::floor(gy);
    w.wz = gz - std::floor(gz);
    return w;
}

template <typename T, typename Get>
T trilinear_apply(const TrilinearWeights& w, Get&& at) {
    auto lerp = [](const T& a, const T& b, double t) { return a * (1.0 - t) + b * t; };
    const T c00 = lerp(at(w.i0, w.j0, w.k0), at(w.i1, w.j0, w.k0), w.wx);
    const T c10 = lerp(at(w.i0, w.j1, w.k0), at(w.i1, w.j1, w.k0), w.wx);
    const T c01 = lerp(at(w.i0, w.j0, w.k1), at(w.i1, w.j0, w.k1), w.wx);
    const T c11 = lerp(at(w.i0, w.j1, w.k1), at(w.i1, w.j1, w.k1), w.wx);
    return lerp(lerp(c00, c10, w.wy), lerp(c01, c11, w.wy), w.wz);
}

}  // namespace

double ScalarField::interpolate(const Vec3& lambda) const {
    const auto w = trilinear_setup(n_, lambda);
    return trilinear_apply<double>(
        w, [&](int i, int j, int k) { return samples_[index(i, j, k)]; });
}

Vec3 ScalarField::interpolate_gradient(const Vec3& lambda) const {
    const auto& g = gradient();
    const auto w = trilinear_setup(n_, lambda);
    return trilinear_apply<Vec3>(w, [&](int i, int j, int k) { return g[index(i, j, k)]; });
}

Sym3 ScalarField::interpolate_hessian(const Vec3& lambda) const {
    const auto& h = hessian();
    const auto w = trilinear_setup(n_, lambda);
    return trilinear_apply<Sym3>(w, [&](int i, int j, int k) { return h[index(i, j, k)]; });
}

double kahan_sum(const std::vector<double>& values) {
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double integrate(const std::vector<double>& node_values, const FlatTorus& torus) {
    const double n3 = static_cast<double>(node_values.size());
    return kahan_sum(node_values) * (torus.volume() / n3);
}

// ---- families ------------------------------------------------------------

double well_profile(double s) {
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s * s;
    return t * t * t * t * t;
}

double well_profile_d1(double s) {
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s * s;
    return -10.0 * s * t * t * t * t;
}

double well_profile_d2(double s) {
    if (s >= 1.0) return 0.0;
    const double t = 1.0 - s * s;
    return t * t * t * (80.0 * s * s - 10.0 * t);
}

double well_level_radius(double depth, double radius, double h) {
    if (!(h > -depth && h < 0.0)) throw ParameterError("level height outside (-depth, 0)");
    // -depth * (1 - s^2)^5 = h  =>  s = sqrt(1 - (|h|/depth)^(1/5))
    const double s = std::sqrt(1.0 - std::pow(-h / depth, 0.2));
    return radius * s;
}

ScalarField make_radial_well(const FlatTorus& torus, int n, double depth, double radius,
                             const Vec3& center_lattice) {
    if (!(depth > 0.0)) throw ParameterError("radial well depth must be positive");
    if (!(radius > 0.0)) throw ParameterError("radial well radius must be positive");
    const auto faces = torus.face_areas();
    const double vol = torus.volume();
    // distance from the center to each face pair of D
    double fit = std::numeric_limits<double>::infinity();
    const double cc[3] = {center_lattice.x, center_lattice.y, center_lattice.z};
    const double fa[3] = {faces[1], faces[2], faces[0]};  // face normal to a1, a2, a3
    for (int i = 0; i < 3; ++i) {
        fit = std::min(fit, cc[i] * vol / fa[i]);
        fit = std::min(fit, (1.0 - cc[i]) * vol / fa[i]);
    }
    if (!(radius < fit)) {
        std::ostringstream msg;
        msg << "radial well radius " << radius << " does not fit strictly inside the "
            << "fundamental domain (max " << fit << " at this center)";
        throw ParameterError(msg.str());
    }

    std::vector<double> samples(static_cast<std::size_t>(n) * n * n);
    std::size_t c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++c) {
                const Vec3 lambda{double(i) / n - center_lattice.x,
                                  double(j) / n - center_lattice.y,
                                  double(k) / n - center_lattice.z};
                // nearest-image physical distance to the center
                double r2 = std::numeric_limits<double>::infinity();
                for (int oi = -1; oi <= 1; ++oi)
                    for (int oj = -1; oj <= 1; ++oj)
                        for (int ok = -1; ok <= 1; ++ok) {
                            const Vec3 d = torus.to_physical(
                                {lambda.x + oi, lambda.y + oj, lambda.z + ok});
                            r2 = std::min(r2, norm2(d));
                        }
                samples[c] = -depth * well_profile(std::sqrt(r2) / radius);
            }
    return ScalarField(torus, n, std::move(samples));
}

ScalarField make_cosine_1d(const FlatTorus& torus, int n, double amplitude) {
    std::vector<double> samples(static_cast<std::size_t>(n) * n * n);
    std::size_t c = 0;
    for (int i = 0; i < n; ++i) {
        const double v = amplitude * (std::cos(2.0 * std::numbers::pi * i / n) - 1.0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++c) samples[c] = v;
    }
    return ScalarField(torus, n, std::move(samples));
}

namespace {

/// splitmix64: deterministic across platforms, unlike <random> distributions.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

}  // namespace

ScalarField make_random_trig(const FlatTorus& torus, int n, std::uint64_t seed,
                             int max_mode, double amplitude) {
    SplitMix64 rng{seed * 0x9e3779b97f4a7c15ULL + 1ULL};
    struct Mode {
        double kx, ky, kz, coeff, phase;
    };
    std::vector<Mode> modes;
    for (int kx = -max_mode; kx <= max_mode; ++kx)
        for (int ky = -max_mode; ky <= max_mode; ++ky)
            for (int kz = -max_mode; kz <= max_mode; ++kz) {
                if (kx == 0 && ky == 0 && kz == 0) continue;
                const double k2 = double(kx * kx + ky * ky + kz * kz);
                const double coeff = (2.0 * rng.uniform() - 1.0) / (1.0 + k2);
                const double phase = 2.0 * std::numbers::pi * rng.uniform();
                modes.push_back({double(kx), double(ky), double(kz), coeff, phase});
            }

    std::vector<double> samples(static_cast<std::size_t>(n) * n * n);
    const double twopi = 2.0 * std::numbers::pi;
    std::size_t c = 0;
    double peak = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++c) {
                const double lx = double(i) / n, ly = double(j) / n, lz = double(k) / n;
                double v = 0.0;
                for (const Mode& m : modes)
                    v += m.coeff * std::cos(twopi * (m.kx * lx + m.ky * ly + m.kz * lz) + m.phase);
                samples[c] = v;
                peak = std::max(peak, std::abs(v));
            }
    if (peak > 0.0)
        for (double& v : samples) v *= amplitude / peak;
    return ScalarField(torus, n, std::move(samples));
}

ScalarField load_raw_field(const FlatTorus& torus, int n, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open raw field file: " + path);
    in.seekg(0, std::ios::end);
    const auto size = static_cast<std::size_t>(in.tellg());
    const std::size_t expected = static_cast<std::size_t>(n) * n * n * sizeof(double);
    if (size != expected) {
        std::ostringstream msg;
        msg << "raw field file " << path << " has " << size << " bytes, expected "
            << expected << " (n = " << n << ", little-endian float64, lambda3 fastest)";
        throw ConfigError(msg.str());
    }
    in.seekg(0);
    std::vector<double> samples(static_cast<std::size_t>(n) * n * n);
    in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(expected));
    if (!in) throw ConfigError("short read on raw field file: " + path);
    if constexpr (std::endian::native == std::endian::big) {
        for (double& v : samples) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            bits = __builtin_bswap64(bits);
            std::memcpy(&v, &bits, 8);
        }
    }
    return ScalarField(torus, n, std::move(samples));
}

}  // namespace graphtori
