#pragma once

// Points, tangent vectors and toric coordinates on the unit sphere in H^2,
// plus the two local sections into the quaternionic unitary group.

#include <array>
#include <stdexcept>
#include <string>

#include "sphere7/quaternion.hpp"

namespace sphere7 {

class PatchViolation : public std::domain_error {
 public:
  explicit PatchViolation(const std::string& what) : std::domain_error("patch violation: " + what) {}
};

using Vec8 = std::array<double, 8>;

// Optional diagnostics filled by the projecting constructors.
struct ProjectionNote {
  bool warned = false;  // deviation exceeded tol::sphere
  double deviation = 0.0;
};

struct SpherePoint {
  Quaternion x, y;

  // Normalizes (x, y) onto the unit sphere.
  static SpherePoint make(const Quaternion& x, const Quaternion& y, ProjectionNote* note = nullptr);
  static SpherePoint from_ambient(const Vec8& v, ProjectionNote* note = nullptr);
  Vec8 ambient() const;
};

struct TangentVector {
  SpherePoint base;
  Quaternion dx, dy;

  // Projects (dx, dy) onto the tangent space at base.
  static TangentVector make(const SpherePoint& base, const Quaternion& dx, const Quaternion& dy,
                            ProjectionNote* note = nullptr);
  static TangentVector from_ambient(const SpherePoint& base, const Vec8& v,
                                    ProjectionNote* note = nullptr);
  Vec8 ambient() const;

  TangentVector operator*(double s) const { return {base, dx * s, dy * s}; }
  TangentVector operator+(const TangentVector& o) const { return {base, dx + o.dx, dy + o.dy}; }
};

// Seven orthonormal ambient directions spanning the tangent space at p.
std::array<Vec8, 7> tangent_frame(const SpherePoint& p);

double dot8(const Vec8& a, const Vec8& b);

enum class Patch { s, n };
const char* patch_name(Patch p);

// Local sections; the second column of each is (x, y).
QMatrix2 section_s(const SpherePoint& p);
QMatrix2 section_n(const SpherePoint& p);
QMatrix2 section(const SpherePoint& p, Patch patch);

// tau with section_n = section_s * diag(tau, 1).
Quaternion transition_tau(const SpherePoint& p);

void require_patch(const SpherePoint& p, Patch patch);

}  // namespace sphere7
