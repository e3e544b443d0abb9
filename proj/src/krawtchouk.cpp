#include "edgecert/krawtchouk.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "edgecert/error.hpp"

namespace edgecert {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int out = 1;
  for (int t = 1; t <= k; ++t) out = out * (n - k + t) / t;
  return out;
}

cpp_int alternating_sum(int m, int k, int l) {
  if (m < 1 || k < 1 || l < 1) throw_invalid("krawtchouk: arguments must be positive integers");
  cpp_int sum = 0;
  for (int r = 0; r <= m - 1; ++r) {
    const cpp_int term = binomial(k, r) * binomial(l, m - 1 - r);
    sum += (r % 2 == 0) ? term : cpp_int(-term);
  }
  return sum;
}

}  // namespace

std::string krawtchouk_sum(int m, int k, int l) { return alternating_sum(m, k, l).str(); }

bool krawtchouk_check(int m, int n, int k, int l) {
  if (n < 1) throw_invalid("krawtchouk: arguments must be positive integers");
  if (k + l != m + n - 2) return false;
  return alternating_sum(m, k, l) == 0;
}

}  // namespace edgecert
