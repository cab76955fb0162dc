#pragma once

#include "ssendo/arith.hpp"
#include "ssendo/cheb_bounds.hpp"
#include "ssendo/config.hpp"
#include "ssendo/errors.hpp"
#include "ssendo/hilbert.hpp"
#include "ssendo/isogeny_graph.hpp"
#include "ssendo/parallel.hpp"
#include "ssendo/qj_solver.hpp"
#include "ssendo/quad_class.hpp"
#include "ssendo/quaternion.hpp"
#include "ssendo/ss_curves.hpp"
