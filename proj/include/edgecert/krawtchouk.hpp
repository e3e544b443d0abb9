#pragma once

#include <string>

namespace edgecert {

/// Sum_{r+s=m-1} (-1)^r C(k,r) C(l,s), exact, as a decimal string.
std::string krawtchouk_sum(int m, int k, int l);

/// True iff k + l = m + n - 2 and the alternating binomial sum vanishes.
bool krawtchouk_check(int m, int n, int k, int l);

}  // namespace edgecert
