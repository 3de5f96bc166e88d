#pragma once

#include "brownian.hpp"
#include "complex_plane.hpp"
#include "greens.hpp"
#include "hardy.hpp"
#include "infinite_products.hpp"
#include "parallel.hpp"
#include "phragmen_lindelof.hpp"
#include "report.hpp"
