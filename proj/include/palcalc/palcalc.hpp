#pragma once

#include "builtins.hpp"
#include "colorability.hpp"
#include "hom_search.hpp"
#include "io.hpp"
#include "lagrangian.hpp"
#include "palette.hpp"
#include "turan_conditions.hpp"
