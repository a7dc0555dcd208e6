// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <thread>
#include <vector>

#include "latham/grid.hpp"

namespace latham {

/// Chunked parallel loop over [0, total). Each index is visited exactly once;
/// callers write to disjoint output slots so results do not depend on
/// scheduling. threads <= 1 runs inline.
inline void parallel_for(Index total, Index threads, const std::function<void(Index)>& fn) {
    if (threads <= 1 || total < 2) {
        for (Index i = 0; i < total; ++i) fn(i);
        return;
    }
    const Index nt = std::min<Index>(threads, total);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nt));
    for (Index t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            const Index chunk = (total + nt - 1) / nt;
            const Index lo = t * chunk;
            const Index hi = std::min(total, lo + chunk);
            for (Index i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace latham
