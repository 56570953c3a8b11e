#pragma once

#include "gpoisson/calculus.hpp"
#include "gpoisson/checks.hpp"
#include "gpoisson/coefficient.hpp"
#include "gpoisson/constructions.hpp"
#include "gpoisson/context.hpp"
#include "gpoisson/error.hpp"
#include "gpoisson/exterior.hpp"
#include "gpoisson/gcd.hpp"
#include "gpoisson/manifest.hpp"
#include "gpoisson/numeric.hpp"
#include "gpoisson/parser.hpp"
#include "gpoisson/polynomial.hpp"
#include "gpoisson/rational_function.hpp"
#include "gpoisson/report.hpp"
