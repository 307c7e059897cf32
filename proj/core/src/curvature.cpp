#include "graphtori/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "graphtori/errors.hpp"

namespace graphtori {

std::vector<double> scalar_curvature(const ScalarField& field) {
    const auto& grad = field.gradient();
    const auto& hess = field.hessian();
    const int n = field.n();
    const std::size_t count = field.node_count();

    std::vector<Vec3> w(count);
    for (std::size_t c = 0; c < count; ++c) {
        const Vec3& g = grad[c];
        const Sym3& h = hess[c];
        const Vec3 bracket = h.trace() * g - h.apply(g);
        w[c] = bracket / std::sqrt(1.0 + norm2(g));
    }

    // rows of A^-1, so that div W = sum_k row_k . d(W)/d(lambda_k)
    const Mat3& B = field.torus().inverse_matrix();
    const Vec3 rows[3] = {{B(0, 0), B(0, 1), B(0, 2)},
                          {B(1, 0), B(1, 1), B(1, 2)},
                          {B(2, 0), B(2, 1), B(2, 2)}};

    std::vector<double> r(count);
    const double h1 = n / 2.0;
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n, im = (i + n - 1) % n;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1) % n, jm = (j + n - 1) % n;
            for (int k = 0; k < n; ++k) {
                const int kp = (k + 1) % n, km = (k + n - 1) % n;
                const Vec3 d0 = (w[field.index(ip, j, k)] - w[field.index(im, j, k)]) * h1;
                const Vec3 d1 = (w[field.index(i, jp, k)] - w[field.index(i, jm, k)]) * h1;
                const Vec3 d2 = (w[field.index(i, j, kp)] - w[field.index(i, j, km)]) * h1;
                r[field.index(i, j, k)] = dot(rows[0], d0) + dot(rows[1], d1) + dot(rows[2], d2);
            }
        }
    }
    return r;
}

ExcessResult negative_excess(const std::vector<double>& curvature, const FlatTorus& torus) {
    std::vector<double> neg(curvature.size()), pos(curvature.size());
    for (std::size_t c = 0; c < curvature.size(); ++c) {
        neg[c] = std::min(curvature[c], 0.0);
        pos[c] = std::max(curvature[c], 0.0);
    }
    ExcessResult res;
    res.m = -integrate(neg, torus);
    res.positive_part = integrate(pos, torus);
    const double scale = std::max({res.m, res.positive_part, 1e-30});
    res.relative_gap = std::abs(res.positive_part - res.m) / scale;
    // Eq-level consistency: the grid sum of R telescopes to zero, so the
    // positive part must reproduce m. A gap means the field is under-resolved.
    const double max_abs = std::abs(curvature.empty() ? 0.0 : *std::max_element(
        curvature.begin(), curvature.end(),
        [](double a, double b) { return std::abs(a) < std::abs(b); }));
    const double atol = 1e-12 * max_abs * torus.volume();
    if (std::abs(res.positive_part - res.m) > 1e-8 * scale + atol) {
        std::ostringstream msg;
        msg << "positive and negative curvature integrals disagree: " << res.positive_part
            << " vs " << res.m << " (relative gap " << res.relative_gap
            << "); the grid is too coarse for this field";
        throw DiscretizationError(msg.str());
    }
    return res;
}

LowerBoundCheck lower_bound_check(const std::vector<double>& curvature,
                                  const FlatTorus& torus, double epsilon) {
    LowerBoundCheck res;
    res.min_curvature = curvature.empty()
                            ? 0.0
                            : *std::min_element(curvature.begin(), curvature.end());
    res.premise_holds = res.min_curvature >= -epsilon;
    res.excess = negative_excess(curvature, torus).m;
    res.bound = torus.volume() * epsilon;
    res.margin = res.bound - res.excess;
    return res;
}

double graph_volume(const ScalarField& field) {
    const auto& grad = field.gradient();
    std::vector<double> values(grad.size());
    for (std::size_t c = 0; c < grad.size(); ++c)
        values[c] = std::sqrt(1.0 + norm2(grad[c]));
    return integrate(values, field.torus());
}

namespace {

struct Offset {
    int di, dj, dk;
    Vec3 dx;  // physical displacement A * (di,dj,dk)/N
};

}  // namespace

DiameterResult graph_diameter(const ScalarField& field) {
    const int n = field.n();
    const std::size_t count = field.node_count();
    const auto& grad = field.gradient();
    const auto& samples = field.samples();

    std::vector<Offset> offsets;
    offsets.reserve(26);
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj)
            for (int dk = -1; dk <= 1; ++dk) {
                if (di == 0 && dj == 0 && dk == 0) continue;
                const Vec3 dx = field.torus().to_physical(
                    {double(di) / n, double(dj) / n, double(dk) / n});
                offsets.push_back({di, dj, dk, dx});
            }

    const std::size_t argmin = static_cast<std::size_t>(
        std::min_element(samples.begin(), samples.end()) - samples.begin());
    std::vector<std::size_t> sources{0};
    if (argmin != 0) sources.push_back(argmin);

    double overall = 0.0;
    std::vector<double> dist(count);
    using Entry = std::pair<double, std::uint32_t>;
    for (std::size_t src : sources) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
        dist[src] = 0.0;
        pq.emplace(0.0, static_cast<std::uint32_t>(src));
        while (!pq.empty()) {
            const auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) continue;
            const int ui = static_cast<int>(u) / (n * n);
            const int uj = (static_cast<int>(u) / n) % n;
            const int uk = static_cast<int>(u) % n;
            const Vec3& gu = grad[u];
            for (const Offset& o : offsets) {
                const std::size_t v = field.index(ui + o.di, uj + o.dj, uk + o.dk);
                const Vec3 gm = (gu + grad[v]) * 0.5;
                const double df = dot(gm, o.dx);
                const double len = std::sqrt(norm2(o.dx) + df * df);
                if (d + len < dist[v]) {
                    dist[v] = d + len;
                    pq.emplace(dist[v], static_cast<std::uint32_t>(v));
                }
            }
        }
        overall = std::max(overall, *std::max_element(dist.begin(), dist.end()));
    }
    return {overall, 1.09};
}

GraphTorus::GraphTorus(ScalarField field)
    : field_(std::move(field)), curvature_(scalar_curvature(field_)) {
    excess_ = negative_excess(curvature_, field_.torus());
    auto [mn, mx] = std::minmax_element(curvature_.begin(), curvature_.end());
    min_R_ = *mn;
    max_R_ = *mx;
    graph_volume_ = graphtori::graph_volume(field_);
}

const DiameterResult& GraphTorus::diameter_estimate() {
    if (!diameter_) diameter_ = graph_diameter(field_);
    return *diameter_;
}

}  // namespace graphtori
