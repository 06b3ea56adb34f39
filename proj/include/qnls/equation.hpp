#pragma once

#include <string>
#include <string_view>

namespace qnls {

/// Sign of the nonlinearity in i u_t + u_xx ± |u|^4 u = 0.
enum class Sign { focusing, defocusing };

/// +1 for focusing, -1 for defocusing.
constexpr double sign_factor(Sign s) { return s == Sign::focusing ? 1.0 : -1.0; }

std::string_view to_string(Sign s);
Sign parse_sign(std::string_view text);

}  // namespace qnls
