#include "factlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace factlab {

unsigned default_thread_count() {
    if (const char* env = std::getenv("FACTLAB_THREADS")) {
        try {
            const unsigned long n = std::stoul(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (...) {
            // fall through to the hardware default
        }
    }
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

unsigned resolve_thread_count(unsigned requested) {
    return requested == 0 ? default_thread_count() : requested;
}

}  // namespace factlab
