#include "tpath/document.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tpath {

int Document::vertex_by_name(const std::string& name) const {
  if (!network) return -1;
  for (const Point& p : network->vertices)
    if (p.name == name) return p.id;
  return -1;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

bool is_keyword(const std::string& t) {
  return t == "dim" || t == "vertices" || t == "edges" || t == "source" || t == "target" ||
         t == "curves" || t == "matrix";
}

Rat parse_rat_at(const std::string& tok, int line) {
  try {
    return parse_rat(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

}

Document parse_document(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  Document doc;

  // dim is picked up first so the sections may come in any order
  int dim = -1;
  for (size_t k = 0; k < lines.size();) {
    const Line& line = lines[k];
    const std::string& head = line.tokens[0];
    if (!is_keyword(head))
      throw ParseError(line.number, "expected a section keyword, got '" + head + "'");
    if (head == "dim") {
      if (line.tokens.size() != 2) throw ParseError(line.number, "dim wants one number");
      if (dim >= 0) throw ParseError(line.number, "dim given twice");
      try {
        dim = std::stoi(line.tokens[1]);
      } catch (...) {
        throw ParseError(line.number, "dim wants one number");
      }
      if (dim < 1) throw ParseError(line.number, "dim must be at least 1");
      ++k;
      continue;
    }
    size_t end = k + 1;
    while (end < lines.size() && !is_keyword(lines[end].tokens[0])) ++end;
    k = end;
  }

  // second pass with bodies
  std::map<std::string, int> vertex_ids;
  TransportNetwork net;
  bool has_vertices = false, has_edges = false, has_source = false, has_target = false;
  bool has_curves = false, has_matrix = false;
  std::vector<Line> curve_lines;
  std::vector<Line> matrix_lines;

  for (size_t k = 0; k < lines.size();) {
    const Line& line = lines[k];
    const std::string& head = line.tokens[0];
    if (head == "dim") {
      ++k;
      continue;
    }
    size_t begin = k + 1, end = begin;
    while (end < lines.size() && !is_keyword(lines[end].tokens[0])) ++end;

    if (head == "vertices") {
      if (has_vertices) throw ParseError(line.number, "section 'vertices' given twice");
      has_vertices = true;
      if (line.tokens.size() != 1) throw ParseError(line.number, "unexpected tokens after 'vertices'");
      if (dim < 1) throw ParseError(line.number, "vertices need a 'dim' line somewhere in the document");
      for (size_t i = begin; i < end; ++i) {
        const Line& v = lines[i];
        if (int(v.tokens.size()) != dim + 1)
          throw ParseError(v.number, "vertex wants a name and " + std::to_string(dim) + " coordinates");
        if (vertex_ids.count(v.tokens[0]))
          throw ParseError(v.number, "vertex '" + v.tokens[0] + "' already declared");
        Point p;
        p.id = int(net.vertices.size());
        p.name = v.tokens[0];
        for (int d = 0; d < dim; ++d) p.coords.push_back(parse_rat_at(v.tokens[1 + d], v.number));
        vertex_ids[p.name] = p.id;
        net.vertices.push_back(std::move(p));
      }
    } else if (head == "edges") {
      if (has_edges) throw ParseError(line.number, "section 'edges' given twice");
      has_edges = true;
      if (!has_vertices) throw ParseError(line.number, "edges must come after vertices");
      for (size_t i = begin; i < end; ++i) {
        const Line& e = lines[i];
        if (e.tokens.size() != 3) throw ParseError(e.number, "edge wants: tail head weight");
        auto tail = vertex_ids.find(e.tokens[0]);
        auto head_it = vertex_ids.find(e.tokens[1]);
        if (tail == vertex_ids.end()) throw ParseError(e.number, "unknown vertex '" + e.tokens[0] + "'");
        if (head_it == vertex_ids.end()) throw ParseError(e.number, "unknown vertex '" + e.tokens[1] + "'");
        net.edges.push_back({tail->second, head_it->second, parse_rat_at(e.tokens[2], e.number)});
      }
    } else if (head == "source" || head == "target") {
      bool src = head == "source";
      bool& flag = src ? has_source : has_target;
      if (flag) throw ParseError(line.number, "section '" + head + "' given twice");
      flag = true;
      if (!has_vertices) throw ParseError(line.number, head + " must come after vertices");
      AtomicMeasure& measure = src ? net.source : net.target;
      for (size_t i = begin; i < end; ++i) {
        const Line& a = lines[i];
        if (a.tokens.size() != 2) throw ParseError(a.number, "atom wants: vertex mass");
        auto v = vertex_ids.find(a.tokens[0]);
        if (v == vertex_ids.end()) throw ParseError(a.number, "unknown vertex '" + a.tokens[0] + "'");
        if (measure.mass_at(v->second))
          throw ParseError(a.number, "vertex '" + a.tokens[0] + "' already carries " + head + " mass");
        measure.add(v->second, parse_rat_at(a.tokens[1], a.number));
      }
    } else if (head == "curves") {
      if (has_curves) throw ParseError(line.number, "section 'curves' given twice");
      has_curves = true;
      for (size_t i = begin; i < end; ++i) curve_lines.push_back(lines[i]);
    } else if (head == "matrix") {
      if (has_matrix) throw ParseError(line.number, "section 'matrix' given twice");
      has_matrix = true;
      for (size_t i = begin; i < end; ++i) matrix_lines.push_back(lines[i]);
      if (matrix_lines.empty()) throw ParseError(line.number, "matrix section is empty");
    }
    k = end;
  }

  if (has_vertices || has_edges || has_source || has_target) {
    if (!has_vertices) throw ParseError(1, "network sections given but 'vertices' is missing");
    if (!has_source) throw ParseError(1, "network sections given but 'source' is missing");
    if (!has_target) throw ParseError(1, "network sections given but 'target' is missing");
    doc.network = std::move(net);
  }

  if (has_curves) {
    if (!doc.network) throw ParseError(1, "curves need a network");
    CurveMeasure cm;
    for (const Line& c : curve_lines) {
      if (c.tokens.size() < 3) throw ParseError(c.number, "curve wants: name weight edge-numbers");
      for (const std::string& name : doc.curve_names)
        if (name == c.tokens[0]) throw ParseError(c.number, "curve '" + c.tokens[0] + "' already declared");
      WeightedCurve wc;
      wc.weight = parse_rat_at(c.tokens[1], c.number);
      for (size_t t = 2; t < c.tokens.size(); ++t) {
        int idx;
        try {
          idx = std::stoi(c.tokens[t]);
        } catch (...) {
          throw ParseError(c.number, "bad edge number '" + c.tokens[t] + "'");
        }
        if (idx < 1 || idx > int(doc.network->edges.size()))
          throw ParseError(c.number, "edge number " + c.tokens[t] + " out of range");
        wc.curve.edges.push_back(idx - 1);
      }
      doc.curve_names.push_back(c.tokens[0]);
      cm.items.push_back(std::move(wc));
    }
    doc.curves = std::move(cm);
  }

  if (has_matrix) {
    size_t at = 0;
    if (at < matrix_lines.size() && matrix_lines[at].tokens[0] == "rows") {
      for (size_t t = 1; t < matrix_lines[at].tokens.size(); ++t)
        doc.matrix_row_labels.push_back(matrix_lines[at].tokens[t]);
      ++at;
    }
    if (at < matrix_lines.size() && matrix_lines[at].tokens[0] == "cols") {
      for (size_t t = 1; t < matrix_lines[at].tokens.size(); ++t)
        doc.matrix_col_labels.push_back(matrix_lines[at].tokens[t]);
      ++at;
    }
    std::vector<std::vector<Rat>> rows;
    for (; at < matrix_lines.size(); ++at) {
      const Line& r = matrix_lines[at];
      std::vector<Rat> row;
      for (const std::string& t : r.tokens) row.push_back(parse_rat_at(t, r.number));
      if (!rows.empty() && row.size() != rows[0].size())
        throw ParseError(r.number, "matrix row has " + std::to_string(row.size()) +
                                       " entries, expected " + std::to_string(rows[0].size()));
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(matrix_lines.back().number, "matrix has no rows");
    RatMatrix m = RatMatrix::zeros(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    if (!doc.matrix_row_labels.empty() && int(doc.matrix_row_labels.size()) != m.rows)
      throw ParseError(matrix_lines[0].number, "matrix has " + std::to_string(m.rows) +
                                                   " rows, labels name " +
                                                   std::to_string(doc.matrix_row_labels.size()));
    if (!doc.matrix_col_labels.empty() && int(doc.matrix_col_labels.size()) != m.cols)
      throw ParseError(matrix_lines[0].number, "matrix has " + std::to_string(m.cols) +
                                                   " columns, labels name " +
                                                   std::to_string(doc.matrix_col_labels.size()));
    doc.matrix = std::move(m);
  }

  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string emit_document(const Document& doc) {
  std::ostringstream out;
  if (doc.network) {
    const TransportNetwork& net = *doc.network;
    out << "dim " << net.dim() << "\n\n";
    out << "vertices\n";
    for (const Point& p : net.vertices) {
      out << p.name;
      for (const Rat& c : p.coords) out << " " << rat_str(c);
      out << "\n";
    }
    out << "\nedges\n";
    for (const Edge& e : net.edges)
      out << net.vertex_name(e.tail) << " " << net.vertex_name(e.head) << " " << rat_str(e.weight)
          << "\n";
    out << "\nsource\n";
    for (const Atom& a : net.source.atoms)
      out << net.vertex_name(a.vertex) << " " << rat_str(a.mass) << "\n";
    out << "\ntarget\n";
    for (const Atom& a : net.target.atoms)
      out << net.vertex_name(a.vertex) << " " << rat_str(a.mass) << "\n";
  }
  if (doc.curves) {
    out << "\ncurves\n";
    for (size_t k = 0; k < doc.curves->items.size(); ++k) {
      const WeightedCurve& wc = doc.curves->items[k];
      std::string name =
          k < doc.curve_names.size() ? doc.curve_names[k] : "c" + std::to_string(k + 1);
      out << name << " " << rat_str(wc.weight);
      for (int e : wc.curve.edges) out << " " << e + 1;
      out << "\n";
    }
  }
  if (doc.matrix) {
    out << "\nmatrix\n";
    if (!doc.matrix_row_labels.empty()) {
      out << "rows";
      for (const std::string& s : doc.matrix_row_labels) out << " " << s;
      out << "\n";
    }
    if (!doc.matrix_col_labels.empty()) {
      out << "cols";
      for (const std::string& s : doc.matrix_col_labels) out << " " << s;
      out << "\n";
    }
    for (int i = 0; i < doc.matrix->rows; ++i) {
      for (int j = 0; j < doc.matrix->cols; ++j) out << (j ? " " : "") << rat_str(doc.matrix->at(i, j));
      out << "\n";
    }
  }
  std::string s = out.str();
  if (!s.empty() && s[0] == '\n') s = s.substr(1);
  return s;
}

}
