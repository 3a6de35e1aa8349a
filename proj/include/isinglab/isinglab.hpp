#pragma once

#include "isinglab/charges.hpp"
#include "isinglab/circuits.hpp"
#include "isinglab/dense.hpp"
#include "isinglab/duality.hpp"
#include "isinglab/fermion.hpp"
#include "isinglab/lax.hpp"
#include "isinglab/pauli.hpp"
#include "isinglab/report.hpp"
