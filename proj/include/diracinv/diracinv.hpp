#pragma once

// Umbrella header.

#include "diracinv/catalog.hpp"
#include "diracinv/clifford.hpp"
#include "diracinv/degeneracy.hpp"
#include "diracinv/errors.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/exprgen.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/inversion.hpp"
#include "diracinv/manufactured.hpp"
#include "diracinv/potential.hpp"
#include "diracinv/report.hpp"
#include "diracinv/sampling.hpp"
#include "diracinv/scenario.hpp"
#include "diracinv/selftest.hpp"
#include "diracinv/verify.hpp"
