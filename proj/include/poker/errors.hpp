#pragma once

#include <stdexcept>
#include <string>

namespace poker {

/// An instance exceeds a configured size guard; the message names the guard
/// and the cheaper alternative where one exists.
struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace poker
