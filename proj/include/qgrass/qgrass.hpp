#pragma once

// Umbrella header: exact workbench for the covering algebra of
// U_q(sl2) (x) U_q(sl2), the universal q-Hahn algebra, finite-field
// subspace lattices, and the Terwilliger algebras of Grassmann graphs.

#include "qgrass/decompose.hpp"
#include "qgrass/homs.hpp"
#include "qgrass/lattice_ops.hpp"
#include "qgrass/modules.hpp"
#include "qgrass/oracle.hpp"
#include "qgrass/terwilliger.hpp"
