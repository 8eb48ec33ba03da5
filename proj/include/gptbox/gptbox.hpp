/// Umbrella header.

#pragma once

#include "gptbox/behavior.hpp"
#include "gptbox/chsh.hpp"
#include "gptbox/json_io.hpp"
#include "gptbox/linalg.hpp"
#include "gptbox/polyhedra.hpp"
#include "gptbox/rational.hpp"
#include "gptbox/selfdual.hpp"
#include "gptbox/swapping.hpp"
#include "gptbox/system.hpp"
#include "gptbox/tensor.hpp"
