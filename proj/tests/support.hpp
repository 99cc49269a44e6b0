#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "stonekit/error.hpp"
#include "stonekit/finposet.hpp"
#include "stonekit/topology.hpp"

namespace support {

/// The Error thrown by f; records a test failure if nothing is thrown.
template <class F>
stonekit::Error error_of(F&& f) {
  try {
    f();
  } catch (const stonekit::Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected a stonekit::Error";
  return stonekit::Error(stonekit::ErrorKind::Internal, "nothing thrown");
}

inline std::string data(const std::string& name) { return std::string(STONEKIT_DATA_DIR) + "/" + name; }

inline stonekit::FinSpace chain_space(std::size_t n) { return stonekit::FinSpace::from_poset(stonekit::FinPoset::chain(n)); }

}  // namespace support

#define EXPECT_ERROR_KIND(expr, k) \
  EXPECT_EQ(support::error_of([&] { (void)(expr); }).kind(), stonekit::ErrorKind::k)
