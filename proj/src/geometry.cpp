#include "lame/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lame {

namespace {

using Point = std::complex<double>;

double cross(Point o, Point a, Point b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(Point z, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

}  // namespace

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    // Andrew's monotone chain; collinear points dropped.
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double hull_distance(Point z, const std::vector<Point>& points) {
    if (points.empty()) return std::numeric_limits<double>::infinity();
    const std::vector<Point> hull = convex_hull(points);
    if (hull.size() == 1) return std::abs(z - hull[0]);
    if (hull.size() == 2) return segment_distance(z, hull[0], hull[1]);

    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point a = hull[i];
        const Point b = hull[(i + 1) % hull.size()];
        if (cross(a, b, z) < 0.0) inside = false;
        best = std::min(best, segment_distance(z, a, b));
    }
    return inside ? 0.0 : best;
}

double diameter(const std::vector<Point>& points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::max(best, std::abs(points[i] - points[j]));
    return best;
}

}  // namespace lame
