#include "qgauss/common.hpp"

#include <atomic>

namespace qgauss {

namespace {
std::atomic<int> g_threads{1};
}

int thread_count() { return g_threads.load(); }

void set_thread_count(int k) {
  if (k < 1) throw precondition_error("bad_threads", "thread count must be >= 1");
  g_threads.store(k);
}

}  // namespace qgauss
