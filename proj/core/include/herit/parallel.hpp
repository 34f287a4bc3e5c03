#ifndef HERIT_PARALLEL_HPP
#define HERIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace herit {

// Worker count for parallel_for. 0 = pick from HERIT_THREADS env var or
// hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n). Iterations must be independent; any
// output slot is owned by its index, so results cannot depend on the
// worker count. First exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace herit

#endif
