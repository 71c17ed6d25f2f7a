#include "nearcrit/parallel.hpp"

#include <atomic>

namespace nearcrit {

namespace {
std::atomic<int> g_workers{1};
}

int default_workers() { return g_workers.load(); }

void set_default_workers(int workers) { g_workers.store(workers < 1 ? 1 : workers); }

}  // namespace nearcrit
