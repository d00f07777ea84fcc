// Umbrella header.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/vec.hpp"
#include "icotomo/icosian.hpp"
#include "icotomo/window.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/slicing.hpp"
#include "icotomo/tomography.hpp"
#include "icotomo/convex.hpp"
#include "icotomo/reconstruction.hpp"
#include "icotomo/experiments.hpp"
#include "icotomo/io.hpp"
