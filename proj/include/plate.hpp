#pragma once

#include "plate/bessel.hpp"
#include "plate/cli.hpp"
#include "plate/datum.hpp"
#include "plate/decay_lab.hpp"
#include "plate/field_io.hpp"
#include "plate/frequency.hpp"
#include "plate/grid.hpp"
#include "plate/multiplier_theory.hpp"
#include "plate/nonexistence.hpp"
#include "plate/norms.hpp"
#include "plate/parallel.hpp"
#include "plate/propagator.hpp"
#include "plate/quadrature.hpp"
#include "plate/radial_oscillatory.hpp"
#include "plate/semilinear.hpp"
#include "plate/slope_fit.hpp"
#include "plate/smooth_cutoff.hpp"
#include "plate/spectral_field.hpp"
