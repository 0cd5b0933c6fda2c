#pragma once

namespace hyperword {

// Every numeric tolerance used by the library lives here.
struct Tolerances {
  static constexpr double hyperboloid_norm = 1e-10;
  static constexpr double unit_vector = 1e-12;
  static constexpr double det_one = 1e-12;
  static constexpr double spd_symmetry = 1e-10;
  static constexpr double spd_det = 1e-9;
  static constexpr double acosh_slack = 1e-12;  // allowed dip of cosh d below 1
  static constexpr double vertical_geodesic = 1e-9;
  static constexpr double boundary = 1e-12;
  static constexpr double vertex_passage = 1e-9;
};

}  // namespace hyperword
