#pragma once

#include <cstddef>

namespace refl1d {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Every parallel loop writes disjoint slots and keeps per-slot arithmetic
// order fixed, so both paths produce bit-identical results; tests assert it.
void set_parallel(bool on);
bool parallel_enabled();

// Requested thread count (0 = runtime default). No-op without OpenMP.
void set_threads(int n);

template <class F>
void par_for(std::size_t n, F&& body);

namespace detail {
void par_for_impl(std::size_t n, void (*fn)(std::size_t, void*), void* ctx);
}

template <class F>
void par_for(std::size_t n, F&& body) {
  auto trampoline = [](std::size_t i, void* ctx) { (*static_cast<F*>(ctx))(i); };
  detail::par_for_impl(n, trampoline, &body);
}

}  // namespace refl1d
