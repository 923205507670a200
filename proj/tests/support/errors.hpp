#pragma once

#include "torweight/error.hpp"

#include <functional>
#include <string>

namespace testfans {

// code of the torweight::Error thrown by f, "" if none
inline std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const torweight::Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace testfans
