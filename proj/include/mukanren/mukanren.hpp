#pragma once

// Umbrella header for the whole library: term algebra, search engine,
// constraint-system framework, the standard constraint library, and the
// program frontend.

#include "mukanren/ast.hpp"
#include "mukanren/eval.hpp"
#include "mukanren/goal.hpp"
#include "mukanren/parser.hpp"
#include "mukanren/print.hpp"
#include "mukanren/sexpr.hpp"
#include "mukanren/stdlib.hpp"
#include "mukanren/store.hpp"
#include "mukanren/stream.hpp"
#include "mukanren/system.hpp"
#include "mukanren/term.hpp"
