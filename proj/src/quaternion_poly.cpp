#include "isolab/quaternion_poly.hpp"

namespace isolab {

QuaternionPoly quaternion_coordinates(std::size_t num_vars, std::size_t first) {
  if (first + 4 > num_vars) throw UsageError("quaternion coordinates exceed the variable count");
  return {{MultiPoly::variable(num_vars, first), MultiPoly::variable(num_vars, first + 1),
           MultiPoly::variable(num_vars, first + 2), MultiPoly::variable(num_vars, first + 3)}};
}

QuaternionPoly quaternion_scalar(std::size_t num_vars, const Rational& value) {
  return {{MultiPoly::constant(num_vars, value), MultiPoly(num_vars), MultiPoly(num_vars), MultiPoly(num_vars)}};
}

}  // namespace isolab
