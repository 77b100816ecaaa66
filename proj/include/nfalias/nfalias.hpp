#pragma once

#include "chirp.hpp"
#include "config.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "imaging.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "run.hpp"
#include "spectral.hpp"
#include "vec.hpp"
#include "wavefield.hpp"
