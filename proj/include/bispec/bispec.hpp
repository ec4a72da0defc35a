#pragma once

#include "bispec/chebyshev.hpp"
#include "bispec/config.hpp"
#include "bispec/cycles.hpp"
#include "bispec/error.hpp"
#include "bispec/experiments.hpp"
#include "bispec/graph.hpp"
#include "bispec/hypergraph.hpp"
#include "bispec/io.hpp"
#include "bispec/matrix.hpp"
#include "bispec/parallel.hpp"
#include "bispec/rng.hpp"
#include "bispec/sampler.hpp"
#include "bispec/spectra.hpp"
#include "bispec/stats.hpp"
#include "bispec/switching.hpp"
#include "bispec/walks.hpp"
