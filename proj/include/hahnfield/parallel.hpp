#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace hahnfield {

enum class Exec { Serial, Parallel };

// Lowest index i in [0, n) with fails(i), or nullopt.
template <class Fails>
std::optional<std::size_t> first_failure_index(std::size_t n, Fails &&fails, Exec exec = Exec::Parallel)
{
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            if (fails(i)) {
                return i;
            }
        }
        return std::nullopt;
    }
    std::size_t best = n;
    std::exception_ptr err;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
    for (long i = 0; i < count; ++i) {
        try {
            if (static_cast<std::size_t>(i) < best && fails(static_cast<std::size_t>(i))) {
                best = std::min(best, static_cast<std::size_t>(i));
            }
        } catch (...) {
#pragma omp critical(hahnfield_error)
            if (!err) {
                err = std::current_exception();
            }
        }
    }
    if (err) {
        std::rethrow_exception(err);
    }
    if (best == n) {
        return std::nullopt;
    }
    return best;
}

// out[i] = pred(i), evaluated serially or with OpenMP.
template <class Pred>
std::vector<char> evaluate_all(std::size_t n, Pred &&pred, Exec exec = Exec::Parallel)
{
    std::vector<char> out(n, 0);
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = pred(i) ? 1 : 0;
        }
        return out;
    }
    std::exception_ptr err;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = pred(static_cast<std::size_t>(i)) ? 1 : 0;
        } catch (...) {
#pragma omp critical(hahnfield_error)
            if (!err) {
                err = std::current_exception();
            }
        }
    }
    if (err) {
        std::rethrow_exception(err);
    }
    return out;
}

// out[i] = f(i) for a default-constructible result type.
template <class T, class F>
std::vector<T> map_indices(std::size_t n, F &&f, Exec exec = Exec::Parallel)
{
    std::vector<T> out(n);
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = f(i);
        }
        return out;
    }
    std::exception_ptr err;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(hahnfield_error)
            if (!err) {
                err = std::current_exception();
            }
        }
    }
    if (err) {
        std::rethrow_exception(err);
    }
    return out;
}

} // namespace hahnfield
