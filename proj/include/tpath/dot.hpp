#ifndef TPATH_DOT_HPP
#define TPATH_DOT_HPP

#include "tpath/core.hpp"

#include <string>

namespace tpath {

// graphviz digraph; sources are boxes, targets are double circles, 2d
// coordinates become neato pin positions
std::string to_dot(const TransportNetwork& net);

// only the edges the chain touches, labeled with their coefficients
std::string chain_to_dot(const TransportNetwork& net, const EdgeChain& chain,
                         const std::string& graph_name);

}

#endif
