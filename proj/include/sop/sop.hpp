#pragma once

// Umbrella header: the whole engine in one include.

#include "sop/boolpoly.hpp"
#include "sop/circuit.hpp"
#include "sop/cyclo.hpp"
#include "sop/dyadic.hpp"
#include "sop/errors.hpp"
#include "sop/fragment.hpp"
#include "sop/intpoly.hpp"
#include "sop/matrix.hpp"
#include "sop/phasepoly.hpp"
#include "sop/rewrite.hpp"
#include "sop/serialize.hpp"
#include "sop/term.hpp"
#include "sop/verify.hpp"
#include "sop/zh.hpp"
