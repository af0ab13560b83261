#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace degen {

/// Raised when a computed state stops being finite (blow-up, bad data).
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& what, std::size_t cell,
                 std::optional<double> time = std::nullopt)
      : std::runtime_error(what), cell_(cell), time_(time) {}

  std::size_t cell() const { return cell_; }
  std::optional<double> time() const { return time_; }

 private:
  std::size_t cell_;
  std::optional<double> time_;
};

}  // namespace degen
