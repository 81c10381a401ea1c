#pragma once

#include <complex>
#include <vector>

namespace lame {

// Convex hull of a planar point set, counterclockwise, no repeated vertices.
// Degenerate inputs give a single point or a two-point segment.
std::vector<std::complex<double>> convex_hull(std::vector<std::complex<double>> points);

// Euclidean distance from z to the hull of the given points (0 inside).
double hull_distance(std::complex<double> z, const std::vector<std::complex<double>>& points);

// Largest pairwise distance.
double diameter(const std::vector<std::complex<double>>& points);

}  // namespace lame
