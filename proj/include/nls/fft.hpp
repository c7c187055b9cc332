#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nls::fft {

using cplx = std::complex<double>;

// Unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i j k / n).
void forward(std::span<const cplx> in, std::span<cplx> out);
// Inverse DFT including the 1/n factor, so inverse(forward(x)) == x.
void inverse(std::span<const cplx> in, std::span<cplx> out);

std::vector<cplx> forward(std::span<const cplx> in);
std::vector<cplx> inverse(std::span<const cplx> in);

} // namespace nls::fft
