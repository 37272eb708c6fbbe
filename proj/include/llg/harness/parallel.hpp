#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <type_traits>
#include <vector>

namespace llg::harness {

/// results[i] = f(i) for i < n, evaluated by up to `jobs` concurrent workers.
/// Results are stored by index, so the output does not depend on `jobs`;
/// the first exception (by index) is rethrown after all workers finish.
template <class F>
auto parallel_map(int jobs, std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out;
  out.reserve(n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
  }
  for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(jobs)) {
    const std::size_t stop = std::min(n, start + static_cast<std::size_t>(jobs));
    std::vector<std::future<R>> wave;
    for (std::size_t i = start; i < stop; ++i) wave.push_back(std::async(std::launch::async, [&f, i] { return f(i); }));
    for (auto& fut : wave) fut.wait();
    for (auto& fut : wave) out.push_back(fut.get());
  }
  return out;
}

}  // namespace llg::harness
