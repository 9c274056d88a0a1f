#ifndef KERSHAW_GRID_HPP
#define KERSHAW_GRID_HPP

namespace kershaw {

/// Uniform 1D grid on (zL, zR) with nz cells; the reference cell is
/// Ihat = (-1/2, 1/2). Cell centers are computed in the symmetric form
/// mid + offset*dz so that mirrored cells have exactly opposite centers on
/// symmetric domains.
struct Grid1D {
  double zL = 0.0;
  double zR = 1.0;
  int nz = 1;

  double dz() const { return (zR - zL) / nz; }
  double center(int j) const {  // 0-based
    return 0.5 * (zL + zR) + (j - 0.5 * (nz - 1)) * dz();
  }
  double interface(int j) const { return zL + j * dz(); }  // j = 0..nz
};

}  // namespace kershaw

#endif
