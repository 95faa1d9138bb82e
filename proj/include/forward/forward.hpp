#ifndef FORWARD_FORWARD_HPP
#define FORWARD_FORWARD_HPP

#include "common.hpp"
#include "condenser.hpp"
#include "engine.hpp"
#include "generator.hpp"
#include "io.hpp"
#include "islander.hpp"
#include "network.hpp"
#include "oracle.hpp"
#include "preprocessor.hpp"
#include "sampler.hpp"
#include "subgraph.hpp"
#include "tree_flow.hpp"

#endif // FORWARD_FORWARD_HPP
