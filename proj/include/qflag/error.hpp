#pragma once

#include <stdexcept>
#include <string>

namespace qflag {

/// Invalid input or violated precondition.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A check that should hold by theory failed; indicates a bug or a violated bound.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace qflag
