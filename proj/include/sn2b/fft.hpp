#pragma once

#include "sn2b/grid.hpp"
#include "sn2b/types.hpp"

namespace sn2b {

// All transforms use the unnormalized forward DFT; the inverse divides by N.
// Plans are cached per thread, so distinct evolutions may run concurrently.

ArrayXcd fft(const ArrayXcd& in);
ArrayXcd ifft(const ArrayXcd& in);

/// In-place 2D transform over both axes of a square complex field.
void fft2_inplace(MatrixXcd& a);
void ifft2_inplace(MatrixXcd& a);

/// Periodic translation f(x) -> f(x - a) by spectral interpolation, exact for
/// band-limited data. The Nyquist mode is kept cosine-like so real input
/// stays real.
ArrayXd spectral_shift(const ArrayXd& f, const Grid1D& grid, double a);

}  // namespace sn2b
