#pragma once

#include "hsd/series.hpp"

namespace hsd::kernels {

// Truncated-series convolution. The serial version is the reference; the
// parallel version partitions output rows by the first exponent so threads
// never write the same coefficient. Both skip zero entries, so cost is
// nnz(a) * nnz(b) coefficient products.
TruncSeries mul_serial(const TruncSeries& a, const TruncSeries& b);
TruncSeries mul_parallel(const TruncSeries& a, const TruncSeries& b);

// Dispatch threshold used by TruncSeries::operator* (product of nonzero
// counts above which the parallel kernel is used).
inline constexpr std::size_t parallel_threshold = 1u << 14;

} // namespace hsd::kernels
