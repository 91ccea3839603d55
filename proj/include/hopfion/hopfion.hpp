#pragma once

#include "hopfion/catalog.hpp"
#include "hopfion/core.hpp"
#include "hopfion/fieldlines.hpp"
#include "hopfion/hopf_map.hpp"
#include "hopfion/oracle.hpp"
#include "hopfion/parallel.hpp"
#include "hopfion/quadrature.hpp"
#include "hopfion/solutions.hpp"
#include "hopfion/special_functions.hpp"
#include "hopfion/spinor.hpp"
#include "hopfion/suites.hpp"
#include "hopfion/verify.hpp"
