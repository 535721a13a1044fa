#pragma once

#include <gtest/gtest.h>

#include "sumprod/error.hpp"

// Expects `stmt` to throw sumprod::Error of the given kind.
#define EXPECT_ERROR_KIND(stmt, k)                                           \
  do {                                                                       \
    try {                                                                    \
      (void)(stmt);                                                          \
      ADD_FAILURE() << #stmt " did not throw";                               \
    } catch (const ::sumprod::Error& e) {                                    \
      EXPECT_EQ(e.kind(), ::sumprod::ErrorKind::k) << e.what();              \
    }                                                                        \
  } while (0)
