#pragma once

#include "padicmub/errors.hpp"
#include "padicmub/integer.hpp"
#include "padicmub/padic.hpp"
#include "padicmub/character.hpp"
#include "padicmub/summation.hpp"
#include "padicmub/finite_field.hpp"
#include "padicmub/gauss.hpp"
#include "padicmub/mub_finite.hpp"
#include "padicmub/mub_padic.hpp"
#include "padicmub/report.hpp"
#include "padicmub/sweep.hpp"
