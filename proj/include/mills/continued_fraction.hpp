#pragma once

// Continued-fraction expansion of the Mills ratio for x > 0:
//   phi(x) = [0; b_0 x, b_1 x, b_2 x, ...]
// with b_{2n} = C(2n, n) / 4^n and b_{2n+1} = 1 / ((2n+1) b_{2n}), and its
// equivalent form phi(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))).

#include <cstddef>
#include <string>

#include "mills/big.hpp"
#include "mills/prec_real.hpp"

namespace mills {

BigRational cf_b(std::size_t n);

// [0; b_0 x, ..., b_{n-1} x], evaluated through the rescaled recurrences
//   P~_{k+1} = b_k x P~_k + P~_{k-1},  Q~_{k+1} = b_k x Q~_k + Q~_{k-1}
// from (P~_0, P~_1) = (1, x), (Q~_0, Q~_1) = (0, 1). Equals Q_n(x) / P_n(x).
// Requires n >= 1 and x > 0.
BigRational cf_convergent(std::size_t n, const BigRational& x);

// 1/(x + 1/(x + 2/(x + ... + depth/x))), evaluated tail first.
// Depth d reproduces the convergent of order d + 1.
// Requires depth >= 1 and x > 0.
PrecReal cf_ladder_eval(std::size_t depth, const PrecReal& x, Precision precision);

// "[0; 1*x, 1*x, 1/2*x, 2/3*x, ...]" with the first `terms` partial quotients.
std::string render_expansion(std::size_t terms);

}  // namespace mills
