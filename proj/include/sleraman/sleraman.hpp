// sleraman.hpp — umbrella header

#pragma once

#include "sleraman/errors.hpp"
#include "sleraman/faddeeva.hpp"
#include "sleraman/kinetics.hpp"
#include "sleraman/numerics.hpp"
#include "sleraman/overlap.hpp"
#include "sleraman/parallel.hpp"
#include "sleraman/pulses.hpp"
#include "sleraman/quadrature.hpp"
#include "sleraman/scenario.hpp"
#include "sleraman/signals.hpp"
#include "sleraman/sle_core.hpp"
#include "sleraman/sos.hpp"
#include "sleraman/units.hpp"
#include "sleraman/validation.hpp"
