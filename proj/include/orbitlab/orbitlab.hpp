#pragma once

#include "orbitlab/degrees.hpp"
#include "orbitlab/error.hpp"
#include "orbitlab/form.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/integer.hpp"
#include "orbitlab/langsiegel.hpp"
#include "orbitlab/maps.hpp"
#include "orbitlab/multiplicity.hpp"
#include "orbitlab/orbit.hpp"
#include "orbitlab/parser.hpp"
#include "orbitlab/place.hpp"
#include "orbitlab/poly.hpp"
#include "orbitlab/poly_factor.hpp"
#include "orbitlab/poly_gcd.hpp"
#include "orbitlab/poly_mod.hpp"
#include "orbitlab/proj_point.hpp"
#include "orbitlab/resultant.hpp"
