#pragma once

#include <witent/bounds.hpp>
#include <witent/herm.hpp>
#include <witent/io.hpp>
#include <witent/lmi.hpp>
#include <witent/measures.hpp>
#include <witent/rng.hpp>
#include <witent/sdp.hpp>
#include <witent/spin.hpp>
#include <witent/states.hpp>
#include <witent/symmetry.hpp>
#include <witent/witness.hpp>

namespace witent {
inline constexpr const char* kVersion = "0.1.0";
}
