#pragma once

#include "analysis.hpp"
#include "bruteforce.hpp"
#include "eigen.hpp"
#include "entangle.hpp"
#include "matrix.hpp"
#include "polarize.hpp"
#include "spinbasis.hpp"
#include "verify.hpp"
#include "xxmodel.hpp"
