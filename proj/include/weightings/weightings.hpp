#pragma once

#include "weightings/calculus.hpp"
#include "weightings/errors.hpp"
#include "weightings/expr.hpp"
#include "weightings/parse.hpp"
#include "weightings/polynomial.hpp"
#include "weightings/rational.hpp"
#include "weightings/weight_sequence.hpp"
#include "weightings/weighted_algebra.hpp"
#include "weightings/jet.hpp"
#include "weightings/lie_algebra.hpp"
#include "weightings/linear_algebra.hpp"
#include "weightings/graph_subbundle.hpp"
#include "weightings/weighting_check.hpp"
#include "weightings/diffop.hpp"
#include "weightings/adapted.hpp"
#include "weightings/geometry.hpp"
#include "weightings/blowup.hpp"
#include "weightings/problem_file.hpp"
#include "weightings/render.hpp"
