#include "graphtori/geometry.hpp"

#include <algorithm>

namespace graphtori {

std::array<double, 3> sym3_eigenvalues(const Sym3& s) {
    // Cyclic Jacobi on a dense symmetric copy.
    double a[3][3] = {{s.xx, s.xy, s.xz}, {s.xy, s.yy, s.yz}, {s.xz, s.yz, s.zz}};
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        double diag = std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]);
        if (off <= 1e-300 || off <= 1e-15 * (diag + off)) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = a[q][p] = 0.0;
                for (int r = 0; r < 3; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a[r][p], arq = a[r][q];
                    a[r][p] = a[p][r] = c * arp - sn * arq;
                    a[r][q] = a[q][r] = sn * arp + c * arq;
                }
            }
        }
    }
    std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::array<double, 3> singular_values(const Mat3& m) {
    const Mat3 mtm = matmul(transpose(m), m);
    Sym3 s;
    s.xx = mtm(0, 0); s.yy = mtm(1, 1); s.zz = mtm(2, 2);
    s.xy = mtm(0, 1); s.xz = mtm(0, 2); s.yz = mtm(1, 2);
    auto ev = sym3_eigenvalues(s);
    for (auto& v : ev) v = std::sqrt(std::max(v, 0.0));
    return ev;
}

}  // namespace graphtori
