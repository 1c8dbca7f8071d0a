#pragma once

#include "bcinv/equivalence.hpp"
#include "bcinv/field_file.hpp"
#include "bcinv/numberfield.hpp"
#include "bcinv/poly_parse.hpp"
#include "bcinv/quadratic.hpp"
#include "bcinv/rayclass.hpp"
#include "bcinv/spectrum.hpp"
#include "bcinv/zeta.hpp"
