#pragma once
#include <array>
#include <string>

#include "bdlab/common.hpp"
#include "bdlab/grid.hpp"

namespace bdlab {

// Boundary-graph descriptor for a flattened chart on a halfspace grid.
// Accepted forms: "zero", "linear:<c>", "quad:<c>", "arc".  "arc" is the
// unit-circle graph phi(y1) = 1 - sqrt(1 - y1^2) used by the disk charts.
struct PhiSpec {
  enum class Kind { zero, linear, quad, arc } kind = Kind::zero;
  double c = 0.0;

  double phi(double y1) const;
  double dphi(double y1) const;
  static PhiSpec parse(const std::string& text);
  std::string text() const;
};

// Coefficients of the flattened operator on a halfspace grid: for n=2 the
// matrix is a = [[1, -phi'], [-phi', phi'^2 + 1]] and the surface-measure
// factor is phitilde = 1/sqrt(1 + phi'^2), both extended constantly in x_n.
struct FlattenedChart {
  PhiSpec spec;
  Vec phi, dphi;              // sampled at node x1
  Vec a11, a12, a22, phitilde;  // per node
};

FlattenedChart build_chart(const PhiSpec& spec, const Grid& grid, double Lambda);

// Eigenvalues (ascending) of a symmetric 2x2 matrix [[a,b],[b,d]].
std::array<double, 2> spd2x2_eig(double a, double b, double d);

}  // namespace bdlab
