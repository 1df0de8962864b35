#pragma once

#include "category.hpp"
#include "coeff.hpp"
#include "corners.hpp"
#include "error.hpp"
#include "examples.hpp"
#include "flowcat.hpp"
#include "jcat.hpp"
#include "json_util.hpp"
#include "morse.hpp"
#include "report.hpp"
