#pragma once

#include "blockcp/boundaries.hpp"
#include "blockcp/calibration.hpp"
#include "blockcp/distributions.hpp"
#include "blockcp/error.hpp"
#include "blockcp/metrics.hpp"
#include "blockcp/rank_stats.hpp"
#include "blockcp/ranks.hpp"
#include "blockcp/rng.hpp"
#include "blockcp/segmentation.hpp"
#include "blockcp/simgen.hpp"
#include "blockcp/summary.hpp"
#include "blockcp/sym_matrix.hpp"
#include "blockcp/version.hpp"
