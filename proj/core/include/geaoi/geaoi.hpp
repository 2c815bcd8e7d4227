#pragma once

#include "geaoi/analytic.hpp"
#include "geaoi/chain.hpp"
#include "geaoi/error.hpp"
#include "geaoi/optimize.hpp"
#include "geaoi/simulate.hpp"
