#pragma once

#include <functional>

#include "gaugefiber/errors.hpp"

namespace testsupport {

/// True when f() throws a gaugefiber::Error with exactly this code.
inline bool throws_code(gaugefiber::errc code, const std::function<void()>& f) {
  try {
    f();
  } catch (const gaugefiber::Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace testsupport
