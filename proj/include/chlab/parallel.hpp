#pragma once

#include <functional>

namespace chlab {

/// Worker count used when a caller passes 0.
int default_workers() noexcept;

/// Runs fn(row) for every row in [0, rows) on `workers` threads pulling rows
/// from a shared counter. fn must only write to slots owned by its row.
void parallel_rows(int rows, int workers, const std::function<void(int)>& fn);

}  // namespace chlab
