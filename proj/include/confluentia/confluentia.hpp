#pragma once

#include "confluentia/algebra.hpp"
#include "confluentia/contraction.hpp"
#include "confluentia/errors.hpp"
#include "confluentia/fft.hpp"
#include "confluentia/hermite.hpp"
#include "confluentia/io.hpp"
#include "confluentia/mathieu.hpp"
#include "confluentia/mra.hpp"
#include "confluentia/ode.hpp"
#include "confluentia/polynomial.hpp"
#include "confluentia/rational.hpp"
#include "confluentia/sampling.hpp"
#include "confluentia/singularity.hpp"
#include "confluentia/tridiag.hpp"
