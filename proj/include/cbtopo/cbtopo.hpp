#pragma once

#include "cbtopo/cbt.hpp"
#include "cbtopo/complex.hpp"
#include "cbtopo/connectivity.hpp"
#include "cbtopo/error.hpp"
#include "cbtopo/fork_sim.hpp"
#include "cbtopo/gf2.hpp"
#include "cbtopo/serialize.hpp"
#include "cbtopo/simplex.hpp"
#include "cbtopo/solvability.hpp"
#include "cbtopo/subdivision.hpp"
#include "cbtopo/task.hpp"
#include "cbtopo/union_find.hpp"
