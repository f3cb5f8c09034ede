#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace lrfs {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Execution {
    Serial,
    Parallel,
};

/// Runs fn(0) … fn(n−1), concurrently under Execution::Parallel. Each index
/// must write only its own output slot. If any call throws, the exception of
/// the lowest failing index is rethrown after the loop, so failures are
/// reported identically in both modes.
template <typename F>
void parallel_for(std::size_t n, Execution exec, F&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const bool parallel = exec == Execution::Parallel && n > 1;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace lrfs
