#pragma once

#include "frob/errors.hpp"
#include "frob/scalar.hpp"
#include "frob/partitions.hpp"
#include "frob/polynomial.hpp"
#include "frob/functional.hpp"
#include "frob/frobenius.hpp"
#include "frob/roots.hpp"
#include "frob/reconstruct.hpp"
#include "frob/io/poly_parser.hpp"
#include "frob/io/json.hpp"
