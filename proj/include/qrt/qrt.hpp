#pragma once

// Umbrella header for the whole library.

#include "qrt/core_map.hpp"
#include "qrt/cubic_curve.hpp"
#include "qrt/errors.hpp"
#include "qrt/exact_verify.hpp"
#include "qrt/group_law.hpp"
#include "qrt/inflections.hpp"
#include "qrt/numerics.hpp"
#include "qrt/periodicity.hpp"
#include "qrt/periods.hpp"
#include "qrt/rational.hpp"
#include "qrt/rotation.hpp"
#include "qrt/sensitivity.hpp"
#include "qrt/transform.hpp"
