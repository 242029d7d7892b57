#pragma once

#include "qbell/analysis.hpp"
#include "qbell/bell.hpp"
#include "qbell/error.hpp"
#include "qbell/experiments.hpp"
#include "qbell/levy.hpp"
#include "qbell/measurements.hpp"
#include "qbell/numerics.hpp"
#include "qbell/optimizer.hpp"
#include "qbell/perturbations.hpp"
#include "qbell/states.hpp"
