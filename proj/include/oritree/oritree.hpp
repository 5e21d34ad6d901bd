#pragma once

#include "oritree/bitset.hpp"
#include "oritree/catalog.hpp"
#include "oritree/cycles.hpp"
#include "oritree/density.hpp"
#include "oritree/digraph.hpp"
#include "oritree/embedder.hpp"
#include "oritree/embedding.hpp"
#include "oritree/error.hpp"
#include "oritree/generators.hpp"
#include "oritree/harness.hpp"
#include "oritree/hypotheses.hpp"
#include "oritree/io.hpp"
#include "oritree/oracle.hpp"
#include "oritree/rng.hpp"
#include "oritree/tree.hpp"
