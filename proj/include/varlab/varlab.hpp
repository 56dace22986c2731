#pragma once

#include "constructions.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "hypergraph.hpp"
#include "hypermon.hpp"
#include "identity_parser.hpp"
#include "io.hpp"
#include "monoid.hpp"
#include "morphism.hpp"
#include "parallel.hpp"
#include "power.hpp"
#include "pword.hpp"
#include "random.hpp"
#include "report.hpp"
#include "rewriting.hpp"
#include "satisfaction.hpp"
#include "witness.hpp"
#include "words.hpp"
#include "zimin_monoid.hpp"
