#pragma once

#include "graded/abelian_group.hpp"
#include "graded/coherence.hpp"
#include "graded/connections.hpp"
#include "graded/decomposition.hpp"
#include "graded/errors.hpp"
#include "graded/exact_linalg.hpp"
#include "graded/generators.hpp"
#include "graded/graded_ring.hpp"
#include "graded/properties.hpp"
#include "graded/report.hpp"
#include "graded/ring_io.hpp"
#include "graded/scalar.hpp"
