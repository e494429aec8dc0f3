#pragma once

// Umbrella header: tensor algebra, bundle metrics, frames and atlases,
// the type-signature language, and document/report handling.

#include "gaugefiber/core.hpp"
#include "gaugefiber/errors.hpp"
#include "gaugefiber/signature.hpp"
#include "gaugefiber/tensor.hpp"
#include "gaugefiber/metrics.hpp"
#include "gaugefiber/frames.hpp"
#include "gaugefiber/atlas.hpp"
#include "gaugefiber/typelang.hpp"
#include "gaugefiber/report.hpp"
