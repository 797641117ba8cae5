#pragma once

#include "dualsm/error.hpp"
#include "dualsm/ast.hpp"
#include "dualsm/terms.hpp"
#include "dualsm/syntax.hpp"
#include "dualsm/logic.hpp"
#include "dualsm/translate.hpp"
#include "dualsm/graph.hpp"
#include "dualsm/simple.hpp"
#include "dualsm/analyze.hpp"
#include "dualsm/harness.hpp"
#include "dualsm/io.hpp"
