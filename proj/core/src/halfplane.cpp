#include "korops/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "korops/error.hpp"
#include "korops/random.hpp"

namespace korops {

bool HalfPlanePoint::admissible(Complex value) noexcept {
  return std::isfinite(value.real()) && std::isfinite(value.imag()) && value.imag() >= kMinImag;
}

HalfPlanePoint::HalfPlanePoint(Complex value) : value_(value) {
  if (!admissible(value)) {
    std::ostringstream os;
    os.precision(17);
    os << "point " << value.real() << (value.imag() < 0 ? "" : "+") << value.imag()
       << "i is not in the upper half-plane (Im must be finite and >= " << kMinImag << ")";
    throw DomainError(os.str());
  }
}

TubePoint::TubePoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("a tube point needs at least one coordinate");
  for (Complex c : coords_) HalfPlanePoint{c};
}

TubePoint TubePoint::unit(std::size_t n) { return TubePoint(std::vector<Complex>(n, Complex(0, 1))); }

bool lexicographic_less(const TubePoint& a, const TubePoint& b) noexcept {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.re(k) != b.re(k)) return a.re(k) < b.re(k);
    if (a.im(k) != b.im(k)) return a.im(k) < b.im(k);
  }
  return a.dim() < b.dim();
}

PolyRadius::PolyRadius(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw DomainError("a poly-radius needs at least one component");
  for (double d : radii_) {
    if (!(d > 0.0 && d < 1.0)) {
      throw DomainError("poly-radius component " + std::to_string(d) + " is outside (0, 1)");
    }
  }
}

PolyRadius PolyRadius::uniform(std::size_t n, double delta) {
  return PolyRadius(std::vector<double>(n, delta));
}

double pseudo_dist(Complex z, Complex w) noexcept {
  if (z == w) return 0.0;
  return std::abs(z - w) / std::abs(z - std::conj(w));
}

double pseudo_dist(const HalfPlanePoint& z, const HalfPlanePoint& w) noexcept {
  return pseudo_dist(z.value(), w.value());
}

std::vector<double> rho_components(const TubePoint& z, const TubePoint& w) {
  if (z.dim() != w.dim()) throw DimensionMismatch(z.dim(), w.dim());
  std::vector<double> out(z.dim());
  for (std::size_t k = 0; k < z.dim(); ++k) out[k] = pseudo_dist(z[k], w[k]);
  return out;
}

double rho(const TubePoint& z, const TubePoint& w) {
  const auto parts = rho_components(z, w);
  return *std::max_element(parts.begin(), parts.end());
}

std::vector<EuclideanDisc> euclidean_polydisc(const TubePoint& z, const PolyRadius& delta) {
  if (z.dim() != delta.dim()) throw DimensionMismatch(z.dim(), delta.dim());
  std::vector<EuclideanDisc> discs;
  discs.reserve(z.dim());
  for (std::size_t k = 0; k < z.dim(); ++k) {
    const double d = delta[k];
    const double y = z.im(k);
    const double denom = 1.0 - d * d;
    discs.push_back({Complex(z.re(k), (1.0 + d * d) / denom * y), 2.0 * d / denom * y});
  }
  return discs;
}

bool polydisc_contains(const TubePoint& z, const PolyRadius& delta, const TubePoint& w) {
  if (z.dim() != delta.dim()) throw DimensionMismatch(z.dim(), delta.dim());
  if (z.dim() != w.dim()) throw DimensionMismatch(z.dim(), w.dim());
  for (std::size_t k = 0; k < z.dim(); ++k) {
    if (!(pseudo_dist(z[k], w[k]) < delta[k])) return false;
  }
  return true;
}

Complex point_at_pseudo_radius(Complex z, double r, double theta) {
  using L = long double;
  const L x = z.real();
  const L y = z.imag();
  const L rr = static_cast<L>(r) * r;
  const L radius = 2.0L * r / (1.0L - rr) * y;
  // Re is rounded toward x so the circle still meets the vertical line through
  // it; Im then solves |z - w| = r |z - conj(w)| exactly for that Re.
  double re = static_cast<double>(x + radius * std::cos(static_cast<L>(theta)));
  while (std::abs(static_cast<L>(re) - x) > radius) re = std::nextafter(re, z.real());
  const L dx = static_cast<L>(re) - x;
  const L t = (1.0L - rr) * dx / y;
  const L disc = std::max(4.0L * rr - t * t, 0.0L);
  const L upper = y * ((1.0L + rr) + std::sqrt(disc)) / (1.0L - rr);
  // The roots multiply to dx^2 + y^2; the lower one is taken from the product.
  const L im = std::sin(theta) >= 0.0 ? upper : (dx * dx + y * y) / upper;
  return {re, static_cast<double>(im)};
}

std::vector<TubePoint> boundary_torus_samples(const TubePoint& z, const PolyRadius& delta,
                                              std::size_t m, std::optional<std::uint64_t> seed) {
  if (z.dim() != delta.dim()) throw DimensionMismatch(z.dim(), delta.dim());
  if (m == 0) throw DomainError("boundary_torus_samples needs m >= 1");
  const std::size_t n = z.dim();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);

  std::vector<double> offsets(n, 0.0);
  if (seed) {
    Rng rng(*seed);
    for (auto& o : offsets) o = rng.uniform() * step;
  }

  std::vector<std::vector<Complex>> circles(n);
  for (std::size_t k = 0; k < n; ++k) {
    circles[k].reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      circles[k].push_back(
          point_at_pseudo_radius(z[k], delta[k], offsets[k] + step * static_cast<double>(j)));
    }
  }

  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= m;
  std::vector<TubePoint> out;
  out.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  std::vector<Complex> coords(n);
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t k = 0; k < n; ++k) coords[k] = circles[k][idx[k]];
    out.emplace_back(coords);
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < m) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace korops
