#pragma once

// Umbrella header: certified harmonic-volume trace values f(N, k) for
// quotient Fermat curves, with non-integrality verdicts.

#include <ceresa/ball.hpp>
#include <ceresa/cache.hpp>
#include <ceresa/curve.hpp>
#include <ceresa/errors.hpp>
#include <ceresa/gamma.hpp>
#include <ceresa/golden_table.hpp>
#include <ceresa/hypergeom.hpp>
#include <ceresa/rational.hpp>
#include <ceresa/row_format.hpp>
#include <ceresa/sweep.hpp>
#include <ceresa/verify.hpp>
#include <ceresa/volume.hpp>
