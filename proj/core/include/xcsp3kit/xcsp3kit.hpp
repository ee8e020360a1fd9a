#pragma once

#include "xcsp3kit/checker.hpp"
#include "xcsp3kit/diagnostic.hpp"
#include "xcsp3kit/domain.hpp"
#include "xcsp3kit/expression.hpp"
#include "xcsp3kit/grammar.hpp"
#include "xcsp3kit/json_emit.hpp"
#include "xcsp3kit/model.hpp"
#include "xcsp3kit/semantics.hpp"
#include "xcsp3kit/solver.hpp"
#include "xcsp3kit/xml.hpp"
