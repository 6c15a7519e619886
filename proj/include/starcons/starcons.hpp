#pragma once

#include "starcons/error.hpp"
#include "starcons/matrix.hpp"
#include "starcons/eigen.hpp"
#include "starcons/topology.hpp"
#include "starcons/characteristic.hpp"
#include "starcons/weights.hpp"
#include "starcons/spectral.hpp"
#include "starcons/optimality.hpp"
#include "starcons/random.hpp"
#include "starcons/simulate.hpp"
#include "starcons/io.hpp"
