#pragma once

#include "board.hpp"
#include "validator.hpp"
#include "compact.hpp"
#include "models.hpp"
#include "oracle.hpp"
#include "solver.hpp"
#include "bench.hpp"
