#pragma once

#include <string>

namespace dmsq {

/// Shortest "%.<digits>g"-style rendering, independent of the C locale.
/// NaN renders as "nan", infinities as "inf" / "-inf".
std::string format_real(double x, int significant_digits = 12);

}  // namespace dmsq
