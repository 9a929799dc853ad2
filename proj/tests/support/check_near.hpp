#pragma once

#include <doctest.h>

#include <cmath>

// Absolute-tolerance comparison that reports both operands on failure.
#define CHECK_NEAR(actual, expected, tol)                                    \
  do {                                                                       \
    const double psk_actual_ = (actual);                                     \
    const double psk_expected_ = (expected);                                 \
    INFO(#actual " = " << psk_actual_ << ", expected " << psk_expected_      \
                       << " +/- " << (tol));                                 \
    CHECK(std::abs(psk_actual_ - psk_expected_) <= (tol));                   \
  } while (0)
