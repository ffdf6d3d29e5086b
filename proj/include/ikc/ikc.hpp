#pragma once

#include "ikc/graph.hpp"
#include "ikc/canonical.hpp"
#include "ikc/random.hpp"
#include "ikc/bipartite.hpp"
#include "ikc/transforms.hpp"
#include "ikc/minor.hpp"
#include "ikc/planarity.hpp"
#include "ikc/rules.hpp"
#include "ikc/engine.hpp"
#include "ikc/io.hpp"
#include "ikc/cache.hpp"
#include "ikc/audit.hpp"
