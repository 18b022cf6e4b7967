#pragma once

// Umbrella header.

#include "calat/analysis.hpp"
#include "calat/compatibility.hpp"
#include "calat/coefficients.hpp"
#include "calat/errors.hpp"
#include "calat/extraction.hpp"
#include "calat/frame.hpp"
#include "calat/json_io.hpp"
#include "calat/lattice.hpp"
#include "calat/matrix.hpp"
#include "calat/mesh_export.hpp"
#include "calat/point.hpp"
#include "calat/scalar.hpp"
#include "calat/synthesis.hpp"
#include "calat/transition.hpp"
