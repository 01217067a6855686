#pragma once

namespace ffcov {

/// Floating-point acceptance thresholds shared by the character, L-function
/// and spectrum code. Exact (integer/rational) checks never consult these.
struct Tolerances {
  double root = 1e-6;            // |u| against q^{-1/2} or 1; trivial zero at u = 1
  double orthogonality = 1e-10;  // character orthogonality and unit sums
  double reconstruction = 1e-6;  // spectrum -> L-polynomial coefficients
  double coefficient_zero = 1e-9;  // L-coefficients treated as vanishing
  double multiplicativity = 1e-12;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace ffcov
