#pragma once

#include "vnepkit/cnf.hpp"
#include "vnepkit/diredpwc.hpp"
#include "vnepkit/formula_graph.hpp"
#include "vnepkit/gadget.hpp"
#include "vnepkit/ip_writer.hpp"
#include "vnepkit/json_io.hpp"
#include "vnepkit/model.hpp"
#include "vnepkit/rational.hpp"
#include "vnepkit/sat.hpp"
#include "vnepkit/solver.hpp"
#include "vnepkit/validate.hpp"
