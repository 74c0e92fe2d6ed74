#pragma once

#include <complex>
#include <vector>

namespace orlicz::detail {

/// Unnormalised in-place DFT: sign = -1 forward, +1 backward.
/// Plans are cached per (size, sign); lookup and execution are thread safe.
void fft_inplace(std::vector<std::complex<double>>& data, int sign);

}  // namespace orlicz::detail
