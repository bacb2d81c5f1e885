#pragma once

#include "subcoup/bits.hpp"
#include "subcoup/coupling.hpp"
#include "subcoup/coverage.hpp"
#include "subcoup/errors.hpp"
#include "subcoup/ground_set.hpp"
#include "subcoup/interval_set.hpp"
#include "subcoup/json_io.hpp"
#include "subcoup/matroid.hpp"
#include "subcoup/rational.hpp"
#include "subcoup/set_function.hpp"
#include "subcoup/sfm.hpp"
#include "subcoup/tensor.hpp"
#include "subcoup/universal.hpp"
