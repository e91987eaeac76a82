#pragma once

// Umbrella header for the restoration library.

#include "tgvr/blur_kernel.hpp"
#include "tgvr/convolver.hpp"
#include "tgvr/degrade.hpp"
#include "tgvr/diff_ops.hpp"
#include "tgvr/errors.hpp"
#include "tgvr/grid_ops.hpp"
#include "tgvr/image_grid.hpp"
#include "tgvr/image_io.hpp"
#include "tgvr/lambda_tuner.hpp"
#include "tgvr/metrics.hpp"
#include "tgvr/operator_norm.hpp"
#include "tgvr/phantom.hpp"
#include "tgvr/prox.hpp"
#include "tgvr/rng.hpp"
#include "tgvr/solver.hpp"
#include "tgvr/sweep.hpp"
#include "tgvr/tensor_field.hpp"
