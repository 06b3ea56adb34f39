#pragma once

#include <span>
#include <vector>

#include "qnls/grid.hpp"

namespace qnls::detail {

/// Places the modes of g onto an FFT-ordered array of length big_n,
/// splitting the Nyquist coefficient between +n/2 and -n/2.
std::vector<cplx> zero_extend(const Grid& g, std::span<const cplx> coeffs, std::size_t big_n);

/// Picks the modes of target out of a longer FFT-ordered array; the Nyquist
/// slot of target is left at zero.
std::vector<cplx> restrict_modes(std::span<const cplx> big, const Grid& target);

std::vector<cplx> coeffs_to_values(std::span<const cplx> coeffs, double length);
std::vector<cplx> values_to_coeffs(std::span<const cplx> values, double length);

}  // namespace qnls::detail
