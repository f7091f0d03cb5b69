#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ranktest {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateEntries : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct GroundSetTooLarge : Error { using Error::Error; };
struct NotASemigraphoid : Error { using Error::Error; };
struct NotSubmodular : Error { using Error::Error; };
struct UnsupportedN : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct CoverageFailure : Error { using Error::Error; };
struct ClassEnumerationUnavailable : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };

struct LatticeTooLarge : Error {
  LatticeTooLarge(const std::string& msg, std::size_t reached)
      : Error(msg), ideals_reached(reached) {}
  std::size_t ideals_reached;
};

}  // namespace ranktest
