#pragma once

#include <string>

namespace krein {

// Every numerical threshold used by the library. Thresholds are relative:
// callers scale them by the max-norm of the input and, where noted, its order.
struct ToleranceProfile {
  std::string name = "default";

  double cholesky_pivot = 1e-14;    // x order x |S|_max
  double psd_clamp = 1e-12;         // x |S|_max, spd_sqrt clamping window
  int max_ql_iterations = 50;       // per eigenvalue
  double orthonormality = 1e-12;    // |Q^T Q - I|_max
  double rank = 1e-12;              // x N x sigma_max
  double krein_mismatch = 1e-9;     // x |A|_max, piecewise vs Ando-Nishio
  double extension_residual = 1e-10;  // x |A|_max
  double symmetry = 1e-9;           // relative asymmetry of assembled maps
  double bessel_merge = 1e-11;      // relative, cross-channel coincidences
  double breakpoint_offset = 1e-9;  // relative probe around counting jumps
  double tie = 1e-12;               // relative, strict-inequality ties

  static ToleranceProfile standard() { return {}; }
  static ToleranceProfile strict();
};

inline ToleranceProfile ToleranceProfile::strict() {
  ToleranceProfile p;
  p.name = "strict";
  p.psd_clamp = 1e-13;
  p.orthonormality = 1e-13;
  p.krein_mismatch = 1e-10;
  p.extension_residual = 1e-11;
  p.symmetry = 1e-10;
  p.bessel_merge = 1e-12;
  return p;
}

}  // namespace krein
