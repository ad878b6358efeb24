#pragma once

#include <cstddef>
#include <functional>

// Deterministic work-sharing helpers.
//
// Ensemble loops are split into fixed-size chunks; each chunk writes into its
// own accumulator slot, and reduction happens sequentially in chunk order
// after all workers join.  Results are therefore bitwise independent of the
// worker count.

namespace qcost {

/// Number of worker threads to use.  `requested <= 0` means "pick for me"
/// (hardware concurrency).  The environment variable QCOST_THREADS, when set
/// to a positive integer, caps the result.  Always at least 1.
int worker_count(int requested = 0);

/// Run `work(chunk_index)` for chunk_index in [0, n_chunks) on up to
/// `threads` workers (resolved via worker_count).  Chunks are claimed from a
/// shared atomic counter; `work` must only touch state owned by its chunk.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& work,
                     int threads = 0);

}  // namespace qcost
