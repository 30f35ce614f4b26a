#pragma once

#include "plonka/error.hpp"
#include "plonka/core_algebra.hpp"
#include "plonka/term.hpp"
#include "plonka/semilattice.hpp"
#include "plonka/band.hpp"
#include "plonka/plonka_algebra.hpp"
#include "plonka/inductive_system.hpp"
#include "plonka/plonka_adjunction.hpp"
#include "plonka/format.hpp"
