#pragma once

// Umbrella header for the whole library.

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/net.hpp"
#include "ahlfors/core/quasi_metric.hpp"
#include "ahlfors/core/space.hpp"
#include "ahlfors/core/subset.hpp"
#include "ahlfors/dimension/ahlfors_fit.hpp"
#include "ahlfors/dimension/hausdorff.hpp"
#include "ahlfors/fractals/generate.hpp"
#include "ahlfors/io/csv.hpp"
#include "ahlfors/maximal/maximal.hpp"
#include "ahlfors/maximal/potential.hpp"
#include "ahlfors/weights/ap.hpp"
#include "ahlfors/weights/weight.hpp"
