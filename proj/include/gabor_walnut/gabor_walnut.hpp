#pragma once

#include "amalgam.hpp"
#include "bracket.hpp"
#include "core.hpp"
#include "diagnostics.hpp"
#include "frame_op.hpp"
#include "invert.hpp"
#include "io.hpp"
#include "parallel.hpp"
