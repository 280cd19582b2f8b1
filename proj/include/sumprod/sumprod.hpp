#pragma once

// Everything except serialization and the CLI, which need the vendored JSON header.

#include "sumprod/error.hpp"
#include "sumprod/polycore.hpp"
#include "sumprod/setalgebra.hpp"
#include "sumprod/wronskian.hpp"
#include "sumprod/mason.hpp"
#include "sumprod/experiments.hpp"
