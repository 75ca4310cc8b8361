#ifndef SPFFF_CANTILEVER_HPP
#define SPFFF_CANTILEVER_HPP

#include <Eigen/Dense>

namespace spfff {

// Physical-unit inputs of the cantilever-beam testbed: load rating R,
// elastic modulus E, horizontal load X, vertical load Y. R is carried as a
// design factor but does not enter either response.
struct CantileverPoint {
  double R = 0;
  double E = 0;
  double X = 0;
  double Y = 0;
};

inline constexpr double kBeamLength = 100.0;
inline constexpr double kBeamWidth = 4.0;
inline constexpr double kBeamThickness = 2.0;
// Part of the testbed's published constant list; not used by the responses.
inline constexpr double kBeamD0 = 2.2535;

inline constexpr double kCantileverLo[4] = {36000.0, 2.61e7, 300.0, 800.0};
inline constexpr double kCantileverHi[4] = {44000.0, 3.19e7, 700.0, 1200.0};

// Per-coordinate affine map from the unit design space [-1,1]^4 onto the
// physical ranges (R, E, X, Y). Throws on out-of-range input.
CantileverPoint to_physical(const Eigen::Vector4d& u);

// Beam-tip displacement 4L^3/(E w t) * sqrt((Y/t^2)^2 + (X/w^2)^2).
double cantilever_displacement(const CantileverPoint& point);

// Pass/fail response: sigmoid(displacement - 4.3) rounded half-up, i.e. 1
// iff the displacement is at least 4.3.
int passfail_from_displacement(double displacement);
int cantilever_passfail(const CantileverPoint& point);

}  // namespace spfff

#endif  // SPFFF_CANTILEVER_HPP
