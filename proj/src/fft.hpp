#pragma once

#include <span>

#include "qnls/grid.hpp"

namespace qnls::detail {

/// Unnormalized forward transform: out_k = sum_j in_j exp(-2 pi i j k / n).
void fft_forward(std::span<const cplx> in, std::span<cplx> out);

/// Unnormalized inverse transform: out_j = sum_k in_k exp(+2 pi i j k / n).
void fft_backward(std::span<const cplx> in, std::span<cplx> out);

}  // namespace qnls::detail
