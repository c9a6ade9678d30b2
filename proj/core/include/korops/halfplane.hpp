#pragma once

// Pseudo-hyperbolic geometry of the upper half-plane H and the tube H^n.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace korops {

using Complex = std::complex<double>;

/// Smallest imaginary part accepted for a point of H.
inline constexpr double kMinImag = 1e-300;

/// A point of the upper half-plane. Construction rejects Im < kMinImag and
/// non-finite values, so every instance satisfies Im > 0.
class HalfPlanePoint {
 public:
  explicit HalfPlanePoint(Complex value);
  HalfPlanePoint(double re, double im) : HalfPlanePoint(Complex(re, im)) {}

  Complex value() const noexcept { return value_; }
  double re() const noexcept { return value_.real(); }
  double im() const noexcept { return value_.imag(); }

  static bool admissible(Complex value) noexcept;

  friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

 private:
  Complex value_;
};

/// A point z = (z_1, ..., z_n) of H^n, n >= 1.
class TubePoint {
 public:
  explicit TubePoint(std::vector<Complex> coords);
  TubePoint(std::initializer_list<Complex> coords) : TubePoint(std::vector<Complex>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  Complex operator[](std::size_t k) const noexcept { return coords_[k]; }
  double re(std::size_t k) const noexcept { return coords_[k].real(); }
  double im(std::size_t k) const noexcept { return coords_[k].imag(); }
  HalfPlanePoint coordinate(std::size_t k) const { return HalfPlanePoint(coords_.at(k)); }
  std::span<const Complex> coords() const noexcept { return coords_; }

  /// (i, i, ..., i)
  static TubePoint unit(std::size_t n);

  friend bool operator==(const TubePoint&, const TubePoint&) = default;

  /// Lexicographic order on (Re z_1, Im z_1, Re z_2, ...); used for tie-breaks.
  friend bool lexicographic_less(const TubePoint& a, const TubePoint& b) noexcept;

 private:
  std::vector<Complex> coords_;
};

/// Multi-radius delta with 0 < delta_k < 1.
class PolyRadius {
 public:
  explicit PolyRadius(std::vector<double> radii);
  PolyRadius(std::initializer_list<double> radii) : PolyRadius(std::vector<double>(radii)) {}
  static PolyRadius uniform(std::size_t n, double delta);

  std::size_t dim() const noexcept { return radii_.size(); }
  double operator[](std::size_t k) const noexcept { return radii_[k]; }
  std::span<const double> radii() const noexcept { return radii_; }

 private:
  std::vector<double> radii_;
};

struct EuclideanDisc {
  Complex center;
  double radius;

  bool contains(Complex w) const noexcept { return std::abs(w - center) < radius; }
};

/// d(z, w) = |z - w| / |z - conj(w)|
double pseudo_dist(const HalfPlanePoint& z, const HalfPlanePoint& w) noexcept;
double pseudo_dist(Complex z, Complex w) noexcept;

/// rho_k(z, w) for every k.
std::vector<double> rho_components(const TubePoint& z, const TubePoint& w);

/// rho(z, w) = max_k rho_k(z, w)
double rho(const TubePoint& z, const TubePoint& w);

/// Euclidean form of the pseudo-hyperbolic polydisc E_delta(z), one disc per coordinate.
std::vector<EuclideanDisc> euclidean_polydisc(const TubePoint& z, const PolyRadius& delta);

/// True iff rho_k(z, w) < delta_k for all k.
bool polydisc_contains(const TubePoint& z, const PolyRadius& delta, const TubePoint& w);

/// m^n points of the distinguished boundary of E_delta(z), on uniform angle
/// grids of the Euclidean boundary circles. With `seed`, each coordinate's
/// grid is rotated by a deterministic offset in [0, 2pi/m).
std::vector<TubePoint> boundary_torus_samples(const TubePoint& z, const PolyRadius& delta,
                                              std::size_t m,
                                              std::optional<std::uint64_t> seed = std::nullopt);

/// The point w_k = C_k + R_k e^{i theta_k} of the pseudo-circle of radius r_k
/// around z_k; rho_k(z, w) = r_k up to rounding.
Complex point_at_pseudo_radius(Complex z, double r, double theta);

}  // namespace korops
