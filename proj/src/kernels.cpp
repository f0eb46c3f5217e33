#include "hsd/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsd::kernels {

namespace {

struct Entry {
    std::size_t flat;
    std::array<std::uint32_t, 3> e;
};

std::vector<Entry> nonzeros(const TruncSeries& s) {
    std::vector<Entry> v;
    v.reserve(s.nonzero_count());
    for (std::size_t i = 0; i < s.flat_size(); ++i)
        if (!s.data()[i].is_zero()) v.push_back({i, s.decode(i)});
    return v;
}

// target flat index is flat(a) + flat(b) once per-variable bounds hold (no
// carry between variables)
bool combine(const TruncSeries& out, const Entry& a, const Entry& b,
             std::array<std::uint32_t, 3>& e) {
    for (std::size_t k = 0; k < out.nvars(); ++k) {
        e[k] = a.e[k] + b.e[k];
        if (e[k] >= out.order(k)) return false;
    }
    return out.under_cap(e);
}

} // namespace

TruncSeries mul_serial(const TruncSeries& a, const TruncSeries& b) {
    require(a.shape() == b.shape(), "mul: shape mismatch");
    TruncSeries out(a.shape());
    auto ea = nonzeros(a);
    auto eb = nonzeros(b);
    std::array<std::uint32_t, 3> e{};
    for (const auto& x : ea)
        for (const auto& y : eb) {
            if (!combine(out, x, y, e)) continue;
            RatFn prod = a.data()[x.flat] * b.data()[y.flat];
            RatFn& slot = out.data()[x.flat + y.flat];
            slot = slot.is_zero() ? std::move(prod) : slot + prod;
        }
    return out;
}

TruncSeries mul_parallel(const TruncSeries& a, const TruncSeries& b) {
#ifndef _OPENMP
    return mul_serial(a, b);
#else
    require(a.shape() == b.shape(), "mul: shape mismatch");
    TruncSeries out(a.shape());
    auto ea = nonzeros(a);
    // group b's entries by first exponent so each output row is owned by one
    // thread
    std::vector<std::vector<Entry>> rows(b.order(0));
    for (std::size_t i = 0; i < b.flat_size(); ++i)
        if (!b.data()[i].is_zero()) {
            Entry en{i, b.decode(i)};
            rows[en.e[0]].push_back(en);
        }
    const auto nrows = static_cast<long>(out.order(0));
#pragma omp parallel for schedule(dynamic)
    for (long r = 0; r < nrows; ++r) {
        std::array<std::uint32_t, 3> e{};
        for (const auto& x : ea) {
            if (x.e[0] > static_cast<std::uint32_t>(r)) continue;
            for (const auto& y : rows[static_cast<std::size_t>(r) - x.e[0]]) {
                if (!combine(out, x, y, e)) continue;
                RatFn prod = a.data()[x.flat] * b.data()[y.flat];
                RatFn& slot = out.data()[x.flat + y.flat];
                slot = slot.is_zero() ? std::move(prod) : slot + prod;
            }
        }
    }
    return out;
#endif
}

} // namespace hsd::kernels
