#pragma once

// Umbrella header for the whole library.

#include "plotkit/aliases.hpp"
#include "plotkit/api.hpp"
#include "plotkit/attr.hpp"
#include "plotkit/backend_counters.hpp"
#include "plotkit/backend_plotly.hpp"
#include "plotkit/backend_svg.hpp"
#include "plotkit/backend_unicode.hpp"
#include "plotkit/colors.hpp"
#include "plotkit/csv.hpp"
#include "plotkit/data.hpp"
#include "plotkit/defaults.hpp"
#include "plotkit/demo_types.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/input_forms.hpp"
#include "plotkit/layout.hpp"
#include "plotkit/plot.hpp"
#include "plotkit/plotfile.hpp"
#include "plotkit/recipes.hpp"
#include "plotkit/recipes_std.hpp"
#include "plotkit/scene.hpp"
#include "plotkit/serialize.hpp"
#include "plotkit/warnings.hpp"
