#pragma once

#include "garland/building.hpp"
#include "garland/complex.hpp"
#include "garland/coxeter.hpp"
#include "garland/decomposition.hpp"
#include "garland/errors.hpp"
#include "garland/linalg.hpp"
#include "garland/subspaces.hpp"
