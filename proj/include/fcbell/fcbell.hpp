#pragma once

// Symmetric full-correlation Bell expressions: construction, exact
// combinatorial bounds, closed-form multipartite bounds, GHZ phase models
// and behavior classification.

#include "fcbell/analytic.hpp"
#include "fcbell/behavior.hpp"
#include "fcbell/circulant.hpp"
#include "fcbell/coefficients.hpp"
#include "fcbell/combinatorial.hpp"
#include "fcbell/correlator.hpp"
#include "fcbell/decompose.hpp"
#include "fcbell/expression.hpp"
#include "fcbell/ghz.hpp"
#include "fcbell/reductions.hpp"
#include "fcbell/report.hpp"
#include "fcbell/scenario.hpp"
#include "fcbell/strategy.hpp"
#include "fcbell/tensor.hpp"
