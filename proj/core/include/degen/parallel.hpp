#pragma once

#include <cstddef>
#include <future>
#include <type_traits>
#include <vector>

namespace degen {

/// Runs fn(0) .. fn(count - 1) concurrently and returns the results in
/// index order. The first exception thrown by any task is rethrown after
/// all tasks finish.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
  using Result = std::invoke_result_t<Fn, std::size_t>;
  std::vector<std::future<Result>> futures;
  futures.reserve(count);
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : futures) f.wait();
  std::vector<Result> out;
  out.reserve(count);
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace degen
