// qcawalk.hpp
// Umbrella header.

#pragma once

#include "amplitudes.hpp"
#include "asymptotics.hpp"
#include "coined_walks.hpp"
#include "correspondence.hpp"
#include "mat2.hpp"
#include "qca_core.hpp"
