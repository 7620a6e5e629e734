#pragma once

#include "mcover/adelic.hpp"
#include "mcover/arith.hpp"
#include "mcover/cocycle.hpp"
#include "mcover/cover.hpp"
#include "mcover/levi.hpp"
#include "mcover/matq.hpp"
#include "mcover/random.hpp"
#include "mcover/symbols.hpp"
#include "mcover/verify.hpp"
