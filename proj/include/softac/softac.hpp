#pragma once

#include "softac/axioms.hpp"
#include "softac/dac.hpp"
#include "softac/errors.hpp"
#include "softac/gac.hpp"
#include "softac/io.hpp"
#include "softac/model.hpp"
#include "softac/oracle.hpp"
#include "softac/structures.hpp"
#include "softac/transforms.hpp"
#include "softac/valuation.hpp"
