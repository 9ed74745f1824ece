#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradlie/cartan.hpp"
#include "gradlie/classical.hpp"
#include "gradlie/graded.hpp"
#include "gradlie/jsonio.hpp"
#include "gradlie/liecore.hpp"
#include "gradlie/melikyan.hpp"
#include "gradlie/modrep.hpp"
#include "gradlie/recognizer.hpp"
#include "gradlie/rootsystem.hpp"

using namespace gradlie;

namespace {

constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kAxiom = 3;
constexpr int kHypotheses = 4;
constexpr int kUnrecognized = 5;
constexpr int kResourceCap = 6;

// Thrown by command helpers; main converts it to an exit code.
struct CommandError {
  int code;
  std::string message;
};

u32 env_cap(u32 fallback) {
  const char* e = std::getenv("GRADLIE_CAP");
  if (!e || !*e) return fallback;
  char* end = nullptr;
  unsigned long v = std::strtoul(e, &end, 10);
  if (end == e || *end != '\0' || v == 0)
    throw CommandError{kUsage, "GRADLIE_CAP must be a positive integer"};
  return (u32)v;
}

std::string read_input(const std::string& path) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{kParse, "cannot open " + path};
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError{kParse, "cannot open " + path + " for writing"};
  out << text;
}

ParsedAlgebra load(const std::string& path, bool no_verify) {
  std::string text = read_input(path);
  ParsedAlgebra doc = [&] {
    try {
      return parse_algebra(text);
    } catch (const ParseError& e) {
      throw CommandError{kParse, std::string("schema error: ") + e.what()};
    }
  }();
  if (!no_verify) {
    StructureReport sr = check_structure(doc.alg);
    if (!sr.clean()) {
      auto [i, j, k] = sr.jacobi_failures.front();
      throw CommandError{kAxiom, "Jacobi identity fails on basis triple (" +
                                     std::to_string(i) + ", " + std::to_string(j) +
                                     ", " + std::to_string(k) + ")"};
    }
    if (doc.graded()) {
      GradingReport gr = check_grading(doc.graded_algebra());
      if (!gr.clean()) {
        auto [i, j] = gr.violations.front();
        throw CommandError{kAxiom, "bracket of basis pair (" + std::to_string(i) +
                                       ", " + std::to_string(j) +
                                       ") is not homogeneous"};
      }
    }
  }
  return doc;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

u32 parse_u32(const std::string& s, const std::string& what) {
  char* end = nullptr;
  unsigned long v = std::strtoul(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || v > 1u << 20)
    throw CommandError{kUsage, what + " must be a small nonnegative integer, got '" + s + "'"};
  return (u32)v;
}

GradedLieAlgebra construct_family(const std::string& spec, u32 p, u32 cap) {
  std::vector<std::string> parts = split(spec, ':');
  const std::string& head = parts.front();
  try {
    if (head == "classical") {
      if (parts.size() != 5)
        throw CommandError{kUsage, "expected classical:<type>:<rank>:<variant>:<node>"};
      if (parts[1].size() != 1 || parts[1][0] < 'A' || parts[1][0] > 'G')
        throw CommandError{kUsage, "type must be one of A..G"};
      SimpleType type = (SimpleType)(parts[1][0] - 'A');
      u32 rank = parse_u32(parts[2], "rank");
      Variant variant;
      const std::string& v = parts[3];
      if (v == "simple") variant = Variant::Simple;
      else if (v == "sl") variant = Variant::Sl;
      else if (v == "gl") variant = Variant::Gl;
      else if (v == "pgl") variant = Variant::Pgl;
      else if (v == "psl") variant = Variant::Psl;
      else throw CommandError{kUsage, "variant must be simple|sl|gl|pgl|psl"};
      u32 node = parse_u32(parts[4], "node");
      RootDatum datum = build_root_system(type, rank);
      ChevalleyAlgebra C = chevalley_algebra(datum, p, variant);
      if (C.alg.dim > cap)
        throw SizeCapExceeded("dimension " + std::to_string(C.alg.dim) +
                              " exceeds the cap " + std::to_string(cap));
      if (node < 1 || node > rank) throw CommandError{kUsage, "node must be 1..rank"};
      return standard_grading(C, node);
    }
    if (head == "melikyan") {
      if (parts.size() != 3) throw CommandError{kUsage, "expected melikyan:<n1>:<n2>"};
      return build_M(parse_u32(parts[1], "n1"), parse_u32(parts[2], "n2"), p, cap).alg;
    }
    static const std::vector<std::pair<std::string, CartanFamily>> families = {
        {"W", CartanFamily::W},   {"S", CartanFamily::S},   {"S1", CartanFamily::S1},
        {"CS", CartanFamily::CS}, {"H", CartanFamily::H},   {"H2", CartanFamily::H2},
        {"CH", CartanFamily::CH}, {"K", CartanFamily::K},   {"K1", CartanFamily::K1}};
    for (const auto& [name, fam] : families) {
      if (head != name) continue;
      if (parts.size() != 3)
        throw CommandError{kUsage, "expected " + name + ":<m>:<n-tuple>"};
      u32 m = parse_u32(parts[1], "m");
      std::vector<u32> n;
      for (const std::string& s : split(parts[2], ','))
        n.push_back(parse_u32(s, "n entry"));
      if (n.size() != m)
        throw CommandError{kUsage, "the n-tuple must have exactly m entries"};
      switch (fam) {
        case CartanFamily::W: return build_W(m, n, p, cap);
        case CartanFamily::S:
        case CartanFamily::S1:
        case CartanFamily::CS: return build_S(m, n, p, fam, cap);
        case CartanFamily::H:
        case CartanFamily::H2:
        case CartanFamily::CH: return build_H(m, n, p, fam, cap);
        default: return build_K(m, n, p, fam, cap);
      }
    }
    throw CommandError{kUsage, "unknown family '" + head + "'"};
  } catch (const SizeCapExceeded& e) {
    throw CommandError{kResourceCap, e.what()};
  } catch (const std::invalid_argument& e) {
    throw CommandError{kUsage, e.what()};
  }
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

void print_basis(const FpSubspace& S) {
  for (std::size_t r = 0; r < S.dim(); ++r)
    std::cout << "  " << vec_str(S.basis_row(r)) << "\n";
}

std::string fingerprint_line(const Fingerprint& fp) {
  std::string s = "q=" + std::to_string(fp.q) + " r=" + std::to_string(fp.r) + " dims=";
  for (std::size_t i = 0; i < fp.dims.size(); ++i)
    s += (i ? "," : "") + std::to_string(fp.dims[i]);
  s += " g0=";
  for (std::size_t i = 0; i < fp.g0_ideals.size(); ++i)
    s += (i ? "+" : "") + fp.g0_ideals[i];
  s += " lambda=";
  if (fp.lambda.empty()) s += "-";
  for (std::size_t i = 0; i < fp.lambda.size(); ++i)
    s += (i ? "," : "") + vec_str(fp.lambda[i]);
  s += " kind=" + bracket_kind_name(fp.bracket_kind);
  s += fp.restricted ? " restricted" : " nonrestricted";
  return s;
}

int cmd_construct(const std::string& spec, u32 p, bool reverse, const std::string& out) {
  GradedLieAlgebra G = construct_family(spec, p, env_cap(kDefaultDimCap));
  if (reverse) G = reverse_grading(G);
  write_output(out, serialize(G));
  return 0;
}

int cmd_verify(const std::string& path) {
  // Axiom checks are reported here rather than thrown, so run load unverified.
  ParsedAlgebra doc = load(path, true);
  StructureReport sr = check_structure(doc.alg);
  std::cout << "structure: " << (sr.clean() ? "clean" : "Jacobi violations") << "\n";
  if (!sr.clean()) {
    for (auto [i, j, k] : sr.jacobi_failures)
      std::cout << "  triple (" << i << ", " << j << ", " << k << ")\n";
    if (sr.truncated) std::cout << "  ... (truncated)\n";
    return kAxiom;
  }
  if (!doc.graded()) {
    std::cout << "grading: absent\n";
    return 0;
  }
  GradedLieAlgebra G = doc.graded_algebra();
  GradingReport gr = check_grading(G);
  std::cout << "grading: " << (gr.clean() ? "clean" : "violations") << "\n";
  if (!gr.clean()) {
    for (auto [i, j] : gr.violations)
      std::cout << "  pair (" << i << ", " << j << ")\n";
    return kAxiom;
  }
  std::cout << "depth: " << G.depth() << "\nheight: " << G.height() << "\n";
  std::cout << "transitive: " << (check_transitivity(G) ? "yes" : "no") << "\n";
  std::cout << "1-transitive: " << (check_one_transitivity(G) ? "yes" : "no") << "\n";
  HypothesisReport rep = check_hypotheses(G);
  std::cout << "null-component summands (a): " << (rep.a_ok ? "ok" : "fail")
            << (rep.a_detail.empty() ? "" : " [" + rep.a_detail + "]") << "\n";
  std::cout << "irreducible lowest component (b): " << (rep.b_ok ? "ok" : "fail") << "\n";
  std::cout << "transitivity (c): " << (rep.c_ok ? "ok" : "fail") << "\n";
  std::cout << "1-transitivity (d): " << (rep.d_ok ? "ok" : "fail") << "\n";
  return rep.pass() ? 0 : kHypotheses;
}

int cmd_radical(const std::string& path, bool no_verify) {
  ParsedAlgebra doc = load(path, no_verify);
  FpSubspace R = weisfeiler_radical(doc.graded_algebra());
  std::cout << "radical dimension: " << R.dim() << "\n";
  print_basis(R);
  return 0;
}

int cmd_minimal_ideal(const std::string& path, bool no_verify) {
  ParsedAlgebra doc = load(path, no_verify);
  try {
    MinimalIdealResult mi = minimal_ideal(doc.graded_algebra());
    std::cout << "minimal ideal dimension: " << mi.ideal.dim() << "\n";
    std::cout << "top degree: " << mi.top_degree << "\n";
    print_basis(mi.ideal);
    return 0;
  } catch (const HypothesesNotMet& e) {
    throw CommandError{kHypotheses, e.what()};
  }
}

int cmd_decompose(const std::string& path, int j, u32 seed, bool no_verify) {
  ParsedAlgebra doc = load(path, no_verify);
  GradedLieAlgebra G = doc.graded_algebra();
  const LieAlgebraFp& L = G.alg;
  FpSubspace g0 = G.component(0);
  FpSubspace gj = G.component(j);
  std::cout << "component degree " << j << ": dimension " << gj.dim() << "\n";
  try {
    ToralSubalgebra t = find_toral(g0, L, seed);
    std::cout << "torus dimension: " << t.dim() << "\n";
    WeightDecomposition wd = weight_decomposition(gj, t, L);
    std::cout << "weights:\n";
    for (std::size_t i = 0; i < wd.weights.size(); ++i)
      std::cout << "  " << vec_str(wd.weights[i]) << " dim " << wd.spaces[i].dim() << "\n";
    if (wd.residue_dim) std::cout << "  non-semisimple residue dim " << wd.residue_dim << "\n";

    WeightDecomposition wd0 = weight_decomposition(g0, t, L);
    RootBase rb = find_base(wd0, L.p);
    std::vector<Vec> pos_rows, neg_rows;
    for (const Vec& a : rb.positive) {
      Vec neg(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) neg[i] = a[i] ? L.p - a[i] : 0;
      const FpSubspace* P = wd0.space_of(a);
      const FpSubspace* N = wd0.space_of(neg);
      if (P) for (std::size_t r = 0; r < P->dim(); ++r) pos_rows.push_back(P->basis_row(r));
      if (N) for (std::size_t r = 0; r < N->dim(); ++r) neg_rows.push_back(N->basis_row(r));
    }
    FpSubspace npos = FpSubspace::span(L.p, L.dim, pos_rows);
    FpSubspace nneg = FpSubspace::span(L.p, L.dim, neg_rows);
    std::cout << "primitive vectors:\n";
    for (const PrimitiveVector& pv : primitive_vectors(gj, t, npos, nneg, L))
      std::cout << "  " << (pv.sign == PrimitiveSign::Plus ? "highest" : "lowest")
                << " weight " << vec_str(pv.weight) << "\n";
  } catch (const std::exception& e) {
    std::cout << "weight analysis unavailable: " << e.what() << "\n";
  }
  std::vector<FpSubspace> series = composition_series(g0, gj, L);
  std::cout << "composition series dims:";
  for (const FpSubspace& S : series) std::cout << " " << S.dim();
  std::cout << "\n";
  return 0;
}

int cmd_recognize(const std::string& path, u32 cap, bool no_verify) {
  ParsedAlgebra doc = load(path, no_verify);
  GradedLieAlgebra G = doc.graded_algebra();
  std::vector<CatalogEntry> catalog = build_catalog(G.alg.p, cap);
  RecognitionResult r = recognize(G, catalog, cap);
  switch (r.status) {
    case RecognitionStatus::Match:
      std::cout << r.label << "\n";
      return 0;
    case RecognitionStatus::HypothesesFail:
      std::cout << "hypotheses fail: " << r.message << "\n";
      return kHypotheses;
    default:
      std::cout << "unrecognized: " << r.message << "\n";
      return kUnrecognized;
  }
}

int cmd_catalog(u32 p, u32 cap, bool collisions) {
  std::vector<CatalogEntry> entries = build_catalog(p, cap);
  for (const CatalogEntry& e : entries)
    std::cout << e.label << " | " << fingerprint_line(e.fp) << "\n";
  if (collisions) {
    std::vector<std::string> col = catalog_collisions(entries);
    if (col.empty()) {
      std::cout << "collisions: none\n";
    } else {
      for (const std::string& c : col) std::cout << "collision: " << c << "\n";
      return kUnrecognized;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded modular Lie algebra toolkit"};
  app.require_subcommand(1);
  bool no_verify = false;
  app.add_flag("--no-verify", no_verify, "skip structure/grading checks after parsing");

  auto* construct = app.add_subcommand("construct", "build a reference algebra as JSON");
  std::string family, out;
  u32 p = 5;
  bool reverse = false;
  construct->add_option("family", family, "family string, e.g. W:2:1,1 or classical:A:2:simple:1")
      ->required();
  construct->add_option("--p", p, "characteristic (default 5)");
  construct->add_flag("--reverse-grading", reverse, "negate all degrees");
  construct->add_option("--out", out, "output file (default stdout)");

  std::string file;
  auto* verify = app.add_subcommand("verify", "check axioms, grading, and hypotheses");
  verify->add_option("file", file, "input document ('-' = stdin)")->required();
  auto* radical = app.add_subcommand("radical", "graded radical dimension and basis");
  radical->add_option("file", file)->required();
  auto* minimal = app.add_subcommand("minimal-ideal", "minimal ideal dimension and basis");
  minimal->add_option("file", file)->required();

  auto* decompose = app.add_subcommand("decompose", "weight analysis of one component");
  int degree = -1;
  u32 seed = 1;
  decompose->add_option("file", file)->required();
  decompose->add_option("--degree", degree, "component degree (default -1)");
  decompose->add_option("--seed", seed, "torus search seed");

  auto* recognize_cmd = app.add_subcommand("recognize", "look the algebra up in the catalog");
  u32 cap = 0;
  recognize_cmd->add_option("file", file)->required();
  recognize_cmd->add_option("--cap", cap, "catalog dimension cap (default 256)");

  auto* catalog_cmd = app.add_subcommand("catalog", "list reference signatures");
  u32 cat_p = 0, cat_cap = 0;
  bool collisions = false;
  catalog_cmd->add_option("--p", cat_p, "characteristic")->required();
  catalog_cmd->add_option("--cap", cat_cap, "dimension cap (default 256)");
  catalog_cmd->add_flag("--collisions", collisions, "also report signature collisions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(family, p, reverse, out);
    if (verify->parsed()) return cmd_verify(file);
    if (radical->parsed()) return cmd_radical(file, no_verify);
    if (minimal->parsed()) return cmd_minimal_ideal(file, no_verify);
    if (decompose->parsed()) return cmd_decompose(file, degree, seed, no_verify);
    if (recognize_cmd->parsed())
      return cmd_recognize(file, cap ? cap : env_cap(256), no_verify);
    if (catalog_cmd->parsed())
      return cmd_catalog(cat_p, cat_cap ? cat_cap : env_cap(256), collisions);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const SizeCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
