#pragma once

// Threshold-based directional run-count features for images.

#define TDASWEEP_VERSION "0.1.0"

#include "config.hpp"
#include "dataset.hpp"
#include "image.hpp"
#include "io.hpp"
#include "knn.hpp"
#include "pipeline.hpp"
#include "sweep.hpp"
#include "synthetic.hpp"
