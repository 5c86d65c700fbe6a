#pragma once

// Everything except the HTTP binding (http.hpp), which pulls in cpp-httplib.

#include "evchain/bundle.hpp"
#include "evchain/characters.hpp"
#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/eval.hpp"
#include "evchain/heuristics.hpp"
#include "evchain/lexicon.hpp"
#include "evchain/pipeline.hpp"
#include "evchain/porter.hpp"
#include "evchain/random.hpp"
#include "evchain/salience.hpp"
#include "evchain/segment.hpp"
#include "evchain/serialize.hpp"
#include "evchain/service.hpp"
#include "evchain/stats.hpp"
#include "evchain/store.hpp"
#include "evchain/temporal.hpp"
#include "evchain/utf8.hpp"
