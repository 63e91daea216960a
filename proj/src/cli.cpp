#include "tpath/cli.hpp"

#include "tpath/cycles.hpp"
#include "tpath/decomposition.hpp"
#include "tpath/document.hpp"
#include "tpath/dot.hpp"
#include "tpath/generate.hpp"
#include "tpath/splitting.hpp"
#include "tpath/stairshape.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tpath {

namespace {

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool porcelain = false;
  int exit_code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(Ctx& ctx, const std::string& path, const std::string& payload,
                  const std::string& what) {
  if (path.empty()) {
    ctx.out << payload;
    return;
  }
  std::ofstream out(path);
  if (!out) throw NetworkError("cannot write '" + path + "'");
  out << payload;
  if (!ctx.porcelain) ctx.out << what << " written to " << path << "\n";
}

TransportNetwork need_network(const Document& doc, const std::string& path) {
  if (!doc.network) throw NetworkError("'" + path + "' has no network sections");
  return *doc.network;
}

CurveMeasure need_curves(const Document& doc, const std::string& path) {
  if (!doc.curves) throw NetworkError("'" + path + "' has no curves section");
  return *doc.curves;
}

RatMatrix load_matrix(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return parse_csv_matrix(read_file(path));
  Document doc = load_document(path);
  if (!doc.matrix) throw NetworkError("'" + path + "' has no matrix section");
  return *doc.matrix;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void cmd_validate(Ctx& ctx, const std::string& path) {
  TransportNetwork net = need_network(load_document(path), path);
  std::vector<std::string> bad = validate_network(net);
  if (bad.empty()) {
    if (ctx.porcelain)
      ctx.out << "ok\n";
    else
      ctx.out << "ok: " << net.vertices.size() << " vertices, " << net.edges.size() << " edges, "
              << net.source.atoms.size() << " source atoms, " << net.target.atoms.size()
              << " target atoms, moved mass " << rat_str(net.source.total()) << "\n";
    return;
  }
  for (const std::string& msg : bad)
    ctx.out << (ctx.porcelain ? "violation " : "violation: ") << msg << "\n";
  ctx.exit_code = 1;
}

void cmd_cycles(Ctx& ctx, const std::string& path) {
  TransportNetwork net = need_network(load_document(path), path);
  require_valid(net);
  CycleCertificate cert = find_cycle(net);
  if (cert.cycle_free) {
    ctx.out << (ctx.porcelain ? "cycle-free\n" : "cycle-free: the support is a forest\n");
    return;
  }
  if (ctx.porcelain) {
    for (const auto& [e, c] : cert.chain.coeffs)
      ctx.out << "edge " << e + 1 << " " << rat_str(c) << "\n";
    ctx.out << "eps " << rat_str(cert.eps) << "\n";
  } else {
    ctx.out << "cycle found through";
    for (int e : cert.cycle_edges)
      ctx.out << " " << net.vertex_name(net.edges[e].tail) << "-"
              << net.vertex_name(net.edges[e].head);
    ctx.out << "\nperturbation size eps = " << rat_str(cert.eps) << ", signed edges:";
    for (const auto& [e, c] : cert.chain.coeffs) ctx.out << " " << e + 1 << ":" << rat_str(c);
    ctx.out << "\n";
  }
  ctx.exit_code = 1;
}

// gN_M when both endpoints are atoms, cK otherwise, deduplicated with suffixes
std::vector<std::string> curve_names_for(const TransportNetwork& net, const CurveMeasure& cm) {
  std::vector<std::string> names;
  std::map<std::string, int> used;
  for (size_t k = 0; k < cm.items.size(); ++k) {
    int s = curve_start(net, cm.items[k].curve);
    int t = curve_end(net, cm.items[k].curve);
    int i = net.source.atom_index(s);
    int j = net.target.atom_index(t);
    std::string base = i >= 0 && j >= 0
                           ? "g" + std::to_string(i + 1) + "_" + std::to_string(j + 1)
                           : "c" + std::to_string(k + 1);
    int n = ++used[base];
    names.push_back(n == 1 ? base : base + "_" + std::to_string(n));
  }
  return names;
}

void cmd_good_extract(Ctx& ctx, const std::string& path, const std::string& outfile) {
  Document doc = load_document(path);
  TransportNetwork net = need_network(doc, path);
  require_valid(net);
  CurveMeasure eta = extract_good_decomposition(net);
  assert(verify_good_decomposition(net, eta).ok);
  doc.curves = eta;
  doc.curve_names = curve_names_for(net, eta);
  write_output(ctx, outfile, emit_document(doc), "decomposition");
}

void cmd_good_verify(Ctx& ctx, const std::string& path) {
  Document doc = load_document(path);
  TransportNetwork net = need_network(doc, path);
  require_valid(net);
  CurveMeasure eta = need_curves(doc, path);
  VerifyReport rep = verify_good_decomposition(net, eta);
  if (rep.ok) {
    ctx.out << (ctx.porcelain
                    ? "good\n"
                    : "good decomposition: edges covered exactly, marginals reproduced\n");
    return;
  }
  for (const std::string& msg : rep.issues)
    ctx.out << (ctx.porcelain ? "issue " : "issue: ") << msg << "\n";
  ctx.exit_code = 1;
}

void cmd_better(Ctx& ctx, const std::string& path, const std::string& outfile) {
  Document doc = load_document(path);
  TransportNetwork net = need_network(doc, path);
  require_valid(net);
  CurveMeasure eta = need_curves(doc, path);
  CurveMeasure fine = better_decompose(net, eta);
  if (!ctx.porcelain && outfile.empty()) {
    ctx.out << "# cell masses before\n" << matrix_pretty(representing_matrix(net, eta).a);
    ctx.out << "# cell masses after\n" << matrix_pretty(representing_matrix(net, fine).a);
  }
  doc.curves = fine;
  doc.curve_names = curve_names_for(net, fine);
  write_output(ctx, outfile, emit_document(doc), "refined decomposition");
}

void cmd_stairify(Ctx& ctx, const std::string& path, bool blockwise, const std::string& outfile) {
  RatMatrix a = load_matrix(path);
  RatMatrix b = blockwise ? blockwise_stairify(a) : stairify(a);
  if (!ctx.porcelain && outfile.empty()) {
    ctx.out << matrix_pretty(b);
    return;
  }
  write_output(ctx, outfile, matrix_csv(b), "matrix");
}

void print_measure(Ctx& ctx, const TransportNetwork& net, const char* tag,
                   const AtomicMeasure& m) {
  for (const Atom& a : m.atoms)
    ctx.out << tag << " " << net.vertex_name(a.vertex) << " " << rat_str(a.mass) << "\n";
}

void print_part(Ctx& ctx, const TransportNetwork& net, const SplitPart& part) {
  if (ctx.porcelain) {
    ctx.out << "part " << part.label << "\n";
    for (const auto& [e, c] : part.chain.coeffs)
      ctx.out << "chain " << e + 1 << " " << rat_str(c) << "\n";
    print_measure(ctx, net, "from", part.part_source);
    print_measure(ctx, net, "to", part.part_target);
    return;
  }
  ctx.out << "part " << part.label << ": " << part.chain.coeffs.size() << " edges, "
          << part.witness.items.size() << " curves, moves mass "
          << rat_str(part.part_source.total()) << "\n";
  ctx.out << "  from:";
  for (const Atom& a : part.part_source.atoms)
    ctx.out << " " << net.vertex_name(a.vertex) << "(" << rat_str(a.mass) << ")";
  ctx.out << "\n  to:  ";
  for (const Atom& a : part.part_target.atoms)
    ctx.out << " " << net.vertex_name(a.vertex) << "(" << rat_str(a.mass) << ")";
  ctx.out << "\n";
}

void print_map(Ctx& ctx, const TransportNetwork& net, const char* tag,
               const TransportMapAssignment& map) {
  if (ctx.porcelain) {
    for (auto [from, to] : map.pairs)
      ctx.out << tag << " " << net.vertex_name(from) << " " << net.vertex_name(to) << " "
              << rat_str(*map.moved.mass_at(from)) << "\n";
    return;
  }
  ctx.out << tag << ":";
  for (auto [from, to] : map.pairs)
    ctx.out << " " << net.vertex_name(from) << "->" << net.vertex_name(to) << "("
            << rat_str(*map.moved.mass_at(from)) << ")";
  ctx.out << "\n";
}

void cmd_split(Ctx& ctx, const std::string& mode, const std::string& path,
               const std::string& dot_dir) {
  Document doc = load_document(path);
  TransportNetwork net = need_network(doc, path);
  require_valid(net);
  CurveMeasure eta = need_curves(doc, path);

  SplitResult result;
  if (mode == "single-target")
    result = split_single_target(net, eta);
  else if (mode == "map-plan")
    result = split_map_plan(net, eta);
  else
    result = split_two_maps(net, eta);

  for (const SplitPart& part : result.parts) print_part(ctx, net, part);
  if (result.map) print_map(ctx, net, "map", *result.map);
  if (result.reverse_map) print_map(ctx, net, "reverse-map", *result.reverse_map);
  if (result.plan) {
    const TransportPlanMatrix& plan = *result.plan;
    for (int i = 0; i < plan.entries.rows; ++i)
      for (int j = 0; j < plan.entries.cols; ++j)
        if (plan.entries.at(i, j) != 0)
          ctx.out << "plan " << net.vertex_name(plan.row_vertex[i]) << " "
                  << net.vertex_name(plan.col_vertex[j]) << " " << rat_str(plan.entries.at(i, j))
                  << "\n";
  }

  if (!dot_dir.empty()) {
    std::filesystem::create_directories(dot_dir);
    for (const SplitPart& part : result.parts) {
      std::string file = dot_dir + "/" + part.label + ".dot";
      std::ofstream out(file);
      if (!out) throw NetworkError("cannot write '" + file + "'");
      out << chain_to_dot(net, part.chain, part.label);
      if (!ctx.porcelain) ctx.out << "wrote " << file << "\n";
    }
  }
}

void cmd_cost(Ctx& ctx, const std::string& path, double alpha) {
  if (alpha < 0 || alpha > 1) throw NetworkError("alpha must lie in [0,1]");
  TransportNetwork net = need_network(load_document(path), path);
  require_valid(net);
  double v = network_cost(net, alpha);
  if (ctx.porcelain)
    ctx.out << "cost " << fmt_double(v) << "\n";
  else
    ctx.out << "alpha-cost at alpha=" << alpha << ": " << fmt_double(v) << "\n";
}

void cmd_compat(Ctx& ctx, const std::string& path) {
  Document doc = load_document(path);
  TransportNetwork net = need_network(doc, path);
  require_valid(net);
  if (!doc.matrix) throw NetworkError("'" + path + "' has no matrix section to use as a plan");
  if (doc.matrix_row_labels.empty() || doc.matrix_col_labels.empty())
    throw NetworkError("the plan matrix needs 'rows' and 'cols' labels naming vertices");

  TransportPlanMatrix plan;
  plan.entries = *doc.matrix;
  for (const std::string& name : doc.matrix_row_labels) {
    int v = doc.vertex_by_name(name);
    if (v < 0) throw NetworkError("unknown vertex '" + name + "' in matrix rows");
    plan.row_vertex.push_back(v);
  }
  for (const std::string& name : doc.matrix_col_labels) {
    int v = doc.vertex_by_name(name);
    if (v < 0) throw NetworkError("unknown vertex '" + name + "' in matrix cols");
    plan.col_vertex.push_back(v);
  }
  for (int i = 0; i < plan.entries.rows; ++i)
    for (int j = 0; j < plan.entries.cols; ++j) {
      plan.first_marginal.add(plan.row_vertex[i], plan.entries.at(i, j));
      plan.second_marginal.add(plan.col_vertex[j], plan.entries.at(i, j));
    }

  CurveMeasure witness = doc.curves ? *doc.curves : witness_from_plan(net, plan);
  CompatReport rep = verify_compatibility(net, network_chain(net), witness, plan);
  if (rep.ok) {
    ctx.out << (ctx.porcelain ? "compatible\n"
                              : "compatible: the plan rides on the network's curves\n");
    return;
  }
  for (const std::string& msg : rep.issues)
    ctx.out << (ctx.porcelain ? "issue " : "issue: ") << msg << "\n";
  ctx.exit_code = 1;
}

void cmd_export(Ctx& ctx, const std::string& path, const std::string& outfile) {
  TransportNetwork net = need_network(load_document(path), path);
  require_valid(net);
  write_output(ctx, outfile, to_dot(net), "dot graph");
}

void cmd_gen(Ctx& ctx, const GenParams& params, const std::string& outfile) {
  Document doc = gen_document(params);
  write_output(ctx, outfile, emit_document(doc), "instance");
}

}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx ctx{out, err};

  CLI::App app{"transport path toolkit: decompositions, stair forms, splittings"};
  app.name("tpath");
  app.require_subcommand(1);
  app.add_flag("--porcelain", ctx.porcelain, "stable machine-readable output");

  std::string path, outfile, dot_dir, mode;
  bool blockwise = false;
  bool rational_masses = false;
  double alpha = 0.5;
  GenParams gen_params;

  CLI::App* validate = app.add_subcommand("validate", "check a network document");
  validate->add_option("file", path, "network document")->required();
  validate->callback([&] { cmd_validate(ctx, path); });

  CLI::App* cycles = app.add_subcommand("cycles", "certify cycle-freeness or exhibit a cycle");
  cycles->add_option("file", path, "network document")->required();
  cycles->callback([&] { cmd_cycles(ctx, path); });

  CLI::App* good = app.add_subcommand("good", "curve decompositions of a network");
  good->require_subcommand(1);
  CLI::App* good_extract =
      good->add_subcommand("extract", "peel curves off a directed-acyclic network");
  good_extract->add_option("file", path, "network document")->required();
  good_extract->add_option("-o,--out", outfile, "write the document here");
  good_extract->callback([&] { cmd_good_extract(ctx, path, outfile); });
  CLI::App* good_verify =
      good->add_subcommand("verify", "check the curves against edges and marginals");
  good_verify->add_option("file", path, "document with a curves section")->required();
  good_verify->callback([&] { cmd_good_verify(ctx, path); });

  CLI::App* better =
      app.add_subcommand("better", "pivot a decomposition until no candidate cells remain");
  better->add_option("file", path, "document with a curves section")->required();
  better->add_option("-o,--out", outfile, "write the document here");
  better->callback([&] { cmd_better(ctx, path, outfile); });

  CLI::App* stair = app.add_subcommand("stairify", "northwest-corner stair form of a matrix");
  stair->add_option("file", path, "csv file or document with a matrix section")->required();
  stair->add_flag("--blockwise", blockwise, "stairify each detected block in place");
  stair->add_option("-o,--out", outfile, "write csv here");
  stair->callback([&] { cmd_stairify(ctx, path, blockwise, outfile); });

  CLI::App* split = app.add_subcommand("split", "split a decomposition into structured parts");
  split->add_option("mode", mode, "single-target, map-plan, or two-maps")
      ->required()
      ->check(CLI::IsMember({"single-target", "map-plan", "two-maps"}));
  split->add_option("file", path, "document with a curves section")->required();
  split->add_option("--dot", dot_dir, "write one dot file per part into this directory");
  split->callback([&] { cmd_split(ctx, mode, path, dot_dir); });

  CLI::App* cost = app.add_subcommand("cost", "alpha-cost of a network");
  cost->add_option("file", path, "network document")->required();
  cost->add_option("--alpha", alpha, "exponent in [0,1]")->required();
  cost->callback([&] { cmd_cost(ctx, path, alpha); });

  CLI::App* compat = app.add_subcommand("compat", "plan against network compatibility");
  compat->require_subcommand(1);
  CLI::App* compat_verify =
      compat->add_subcommand("verify", "check the document's labeled matrix as a plan");
  compat_verify->add_option("file", path, "document with network and matrix sections")->required();
  compat_verify->callback([&] { cmd_compat(ctx, path); });

  CLI::App* exp = app.add_subcommand("export", "render a network for graphviz");
  exp->add_option("file", path, "network document")->required();
  exp->add_option("-o,--out", outfile, "write here");
  exp->callback([&] { cmd_export(ctx, path, outfile); });

  CLI::App* gen = app.add_subcommand("gen", "generate a random cycle-free instance");
  gen->add_option("--seed", gen_params.seed, "rng seed")->required();
  gen->add_option("--sources", gen_params.sources, "number of source atoms")->required();
  gen->add_option("--targets", gen_params.targets, "number of target atoms")->required();
  gen->add_flag("--rational", rational_masses, "draw masses with denominators 2 or 4");
  gen->add_option("-o,--out", outfile, "write the document here");
  gen->callback([&] {
    gen_params.integer_masses = !rational_masses;
    cmd_gen(ctx, gen_params, outfile);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MatrixError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}

}
