#pragma once

#include "isolab/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <type_traits>

namespace isolab {

/// 50 decimal digit binary float used for quadrature nodes and high-precision evaluation.
using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Converts between the scalar types used across the library (Rational, double, Float50).
template <typename To, typename From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, Rational>) {
    if constexpr (std::is_same_v<To, double>) {
      return v.get_d();
    } else {
      return To(v.get_num().get_str()) / To(v.get_den().get_str());
    }
  } else {
    return static_cast<To>(v);
  }
}

}  // namespace isolab
