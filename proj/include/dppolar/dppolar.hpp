// Umbrella header: the whole library in one include.
#pragma once

#include "analyze.hpp"    // IWYU pragma: export
#include "bms.hpp"        // IWYU pragma: export
#include "channel.hpp"    // IWYU pragma: export
#include "construct.hpp"  // IWYU pragma: export
#include "core.hpp"       // IWYU pragma: export
#include "crc.hpp"        // IWYU pragma: export
#include "decode.hpp"     // IWYU pragma: export
#include "dp_train.hpp"   // IWYU pragma: export
#include "mc.hpp"         // IWYU pragma: export
#include "minus_array.hpp"  // IWYU pragma: export
#include "rng.hpp"        // IWYU pragma: export
#include "simulate.hpp"   // IWYU pragma: export
