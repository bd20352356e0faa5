#pragma once

#include "analysis.hpp"
#include "dsl.hpp"
#include "emit.hpp"
#include "fatgraph.hpp"
#include "grid.hpp"
#include "lowering.hpp"
#include "mcg.hpp"
#include "openbook.hpp"
#include "page.hpp"
#include "pipeline.hpp"
#include "rational.hpp"
#include "smith.hpp"
#include "words.hpp"
