#pragma once

#include "ncdiff/algebra.hpp"
#include "ncdiff/bimodule.hpp"
#include "ncdiff/cartan.hpp"
#include "ncdiff/cecalc.hpp"
#include "ncdiff/derivations.hpp"
#include "ncdiff/diffop.hpp"
#include "ncdiff/homspace.hpp"
#include "ncdiff/matrix.hpp"
#include "ncdiff/rng.hpp"
#include "ncdiff/scalar.hpp"
#include "ncdiff/subspace.hpp"
#include "ncdiff/zoo.hpp"
