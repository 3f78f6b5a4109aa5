#include "ple/ode.hpp"

#include <algorithm>
#include <stdexcept>

namespace ple {

Vec4 sample_dense(const std::vector<DenseStep>& segs, double t) {
  if (segs.empty()) throw std::out_of_range("no dense segments recorded");
  const bool fwd = segs.front().h > 0;
  // binary search for the segment containing t
  std::size_t lo = 0, hi = segs.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const double t1 = segs[mid].t1();
    if (fwd ? t1 < t : t1 > t)
      lo = mid + 1;
    else
      hi = mid;
  }
  return segs[lo].eval(t);
}

}  // namespace ple
