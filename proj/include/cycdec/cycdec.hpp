#pragma once

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"
#include "cycdec/matrix.hpp"
#include "cycdec/poly.hpp"
#include "cycdec/graph.hpp"
#include "cycdec/passage.hpp"
#include "cycdec/engine.hpp"
#include "cycdec/oracle.hpp"
#include "cycdec/queries.hpp"
