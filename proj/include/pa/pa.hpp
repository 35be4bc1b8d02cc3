#pragma once

#include "convex.hpp"
#include "dfa.hpp"
#include "general_pa.hpp"
#include "languages.hpp"
#include "linear_automaton.hpp"
#include "lp.hpp"
#include "matrix.hpp"
#include "moore_pa.hpp"
#include "pattern.hpp"
#include "sequences.hpp"
#include "span.hpp"
#include "subspace.hpp"
#include "tables.hpp"
#include "tolerance.hpp"
#include "words.hpp"
