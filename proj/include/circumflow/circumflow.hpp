#pragma once

#include "circumflow/dynamics.hpp"
#include "circumflow/errors.hpp"
#include "circumflow/io.hpp"
#include "circumflow/limits.hpp"
#include "circumflow/linalg.hpp"
#include "circumflow/precision.hpp"
#include "circumflow/random.hpp"
#include "circumflow/simplex.hpp"
#include "circumflow/sphere.hpp"
