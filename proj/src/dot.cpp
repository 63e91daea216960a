#include "tpath/dot.hpp"

#include <sstream>

namespace tpath {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void emit_nodes(std::ostream& out, const TransportNetwork& net) {
  for (const Point& p : net.vertices) {
    out << "  " << quote(p.name) << " [";
    if (net.is_source_atom(p.id))
      out << "shape=box label=" << quote(p.name + " (" + rat_str(*net.source.mass_at(p.id)) + ")");
    else if (net.is_target_atom(p.id))
      out << "shape=doublecircle label=" << quote(p.name + " (" + rat_str(*net.target.mass_at(p.id)) + ")");
    else
      out << "shape=circle label=" << quote(p.name);
    if (p.coords.size() == 2)
      out << " pos=" << quote(rat_str(p.coords[0]) + "," + rat_str(p.coords[1]) + "!");
    out << "];\n";
  }
}

}

std::string to_dot(const TransportNetwork& net) {
  std::ostringstream out;
  out << "digraph transport {\n";
  emit_nodes(out, net);
  for (const Edge& e : net.edges)
    out << "  " << quote(net.vertex_name(e.tail)) << " -> " << quote(net.vertex_name(e.head))
        << " [label=" << quote(rat_str(e.weight)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string chain_to_dot(const TransportNetwork& net, const EdgeChain& chain,
                         const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << quote(graph_name) << " {\n";
  emit_nodes(out, net);
  for (const auto& [e, c] : chain.coeffs) {
    const Edge& ed = net.edges.at(e);
    out << "  " << quote(net.vertex_name(ed.tail)) << " -> " << quote(net.vertex_name(ed.head))
        << " [label=" << quote(rat_str(c));
    if (c < 0) out << " color=red";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}
