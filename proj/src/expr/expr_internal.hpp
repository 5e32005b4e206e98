#pragma once

#include "pdmsusy/expr.hpp"

namespace pdmsusy::detail {

// Pointwise kernels shared by constant folding and evaluation. Both throw
// NumericalError on poles so a folded constant never hides one.
Complex pow_value(Complex base, Complex exponent);
Complex call_value(Func f, Complex z);

}  // namespace pdmsusy::detail
