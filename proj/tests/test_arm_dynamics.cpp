#include <doctest.h>
#include "armlab/arm_dynamics.hpp"
TEST_CASE("placeholder") { CHECK(true); }
