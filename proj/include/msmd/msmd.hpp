#pragma once

#include "msmd/asymptotics.hpp"
#include "msmd/bfs.hpp"
#include "msmd/common.hpp"
#include "msmd/construction.hpp"
#include "msmd/csv.hpp"
#include "msmd/edge_list.hpp"
#include "msmd/exact.hpp"
#include "msmd/expansion.hpp"
#include "msmd/gnp.hpp"
#include "msmd/graph.hpp"
#include "msmd/localization.hpp"
#include "msmd/parallel.hpp"
#include "msmd/rational.hpp"
#include "msmd/rng.hpp"
#include "msmd/signature.hpp"
