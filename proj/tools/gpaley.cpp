// gpaley: certificates, witnesses, scans, and exports for generalised Paley
// graphs.  Exit codes: 0 success, 2 invalid input, 3 valid-but-negative.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gpaley/cartesian.hpp"
#include "gpaley/isomorphism.hpp"
#include "gpaley/paley.hpp"

using namespace gpaley;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNegative = 3;

ordered_json params_block(const GPaleyParams& params) {
  ordered_json j;
  j["p"] = params.p;
  j["n"] = params.n;
  j["k"] = params.k;
  j["d"] = params.d;
  j["modulus"] = params.field.modulus().coeffs;
  j["xi"] = params.field.xi();
  return j;
}

ordered_json pair_block(const GPaleyParams& params, const DecompPair& pair) {
  ordered_json j;
  j["b"] = pair.b;
  j["c"] = pair.c;
  j["hamming"] = is_hamming(params, pair);
  return j;
}

ordered_json edges_block(const Graph& g) {
  ordered_json out = ordered_json::array();
  for (auto [u, v] : g.edges()) out.push_back(ordered_json::array({u, v}));
  return out;
}

ordered_json witness_block(const GPaleyParams& params, const DecompositionWitness& w) {
  if (!verify_decomposition(params, w))
    throw verification_error("witness failed independent verification");
  ordered_json j;
  j["pair"] = pair_block(params, w.pair);
  j["C"] = w.C;
  j["cosets"] = w.cosets;
  j["basis"] = w.basis;
  j["factor_vertices"] = w.factor_vertex_encodings;
  j["factor_edges"] = edges_block(w.factor);
  j["phi"] = w.phi;
  return j;
}

std::string pairs_cell(const GPaleyParams& params, const std::vector<DecompPair>& pairs) {
  if (pairs.empty()) return "prime";
  std::ostringstream out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out << ",";
    out << "(" << pairs[i].b << "," << pairs[i].c;
    if (is_hamming(params, pairs[i])) out << ",H";
    out << ")";
  }
  return out.str();
}

// graph-level cross-check of a parameter-level verdict
bool oracle_agrees(const GPaleyParams& params, const std::vector<DecompPair>& pairs,
                   int max_vertices) {
  Graph g = build(params);
  auto r = prime_factorize(g, max_vertices);
  if (pairs.empty()) return r.factors.size() == 1;
  DecompPair best = pairs.back();
  if (static_cast<int64>(r.factors.size()) != best.b) return false;
  Graph sub = build(validate_params(params.p, params.n / static_cast<int>(best.b), best.c));
  for (const Graph& f : r.factors)
    if (!are_isomorphic(f, sub)) return false;
  return true;
}

int cmd_check(int64 p, int n, int64 k, bool want_aut, int max_vertices) {
  auto params = validate_params(p, n, k);
  ordered_json cert = params_block(params);
  cert["connected"] = params.connected;
  cert["affine_order"] = group_closure_order(affine_generators(params));
  std::vector<DecompPair> pairs;
  if (params.connected) pairs = decomposable_params(params);
  cert["decomposable"] = !pairs.empty();
  cert["pairs"] = ordered_json::array();
  for (const DecompPair& pr : pairs) cert["pairs"].push_back(pair_block(params, pr));
  if (pairs.empty()) {
    cert["canonical"] = nullptr;
  } else {
    auto canon = canonical_decomposition(params);
    ordered_json summary;
    summary["b"] = canon->first.b;
    summary["c"] = canon->first.c;
    summary["hamming"] = is_hamming(params, canon->first);
    summary["factor_order"] = canon->second.factor.vertex_count();
    summary["verified"] = verify_decomposition(params, canon->second);
    cert["canonical"] = summary;
  }
  if (want_aut) cert["aut_order"] = automorphism_count(build(params), max_vertices);
  std::cout << cert.dump(2) << "\n";
  return 0;
}

int cmd_decompose(int64 p, int n, int64 k, int64 b) {
  auto params = validate_params(p, n, k);
  if (!params.connected) {
    std::cerr << "gpaley: instance is disconnected\n";
    return kExitInvalid;
  }
  auto pairs = decomposable_params(params);
  if (pairs.empty()) {
    std::cerr << "gpaley: instance is Cartesian-prime\n";
    return kExitNegative;
  }
  DecompPair chosen = pairs.back();
  if (b > 0) {
    bool found = false;
    for (const DecompPair& pr : pairs)
      if (pr.b == b) {
        chosen = pr;
        found = true;
      }
    if (!found) {
      std::cerr << "gpaley: no decomposition with b=" << b << "\n";
      return kExitNegative;
    }
  }
  auto w = construct_decomposition(params, chosen);
  ordered_json out = params_block(params);
  out["witness"] = witness_block(params, w);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_factorize(const std::string& path, int max_vertices) {
  Graph g(0);
  if (path == "-") {
    g = read_edge_list(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "gpaley: cannot open " << path << "\n";
      return kExitInvalid;
    }
    g = read_edge_list(in);
  }
  auto r = prime_factorize(g, max_vertices);
  ordered_json out;
  out["vertices"] = g.vertex_count();
  out["edges"] = g.edge_count();
  out["prime"] = r.factors.size() == 1;
  out["factors"] = ordered_json::array();
  for (const Graph& f : r.factors) {
    ordered_json jf;
    jf["vertices"] = f.vertex_count();
    jf["edges"] = edges_block(f);
    out["factors"].push_back(jf);
  }
  out["edge_class"] = r.edge_class;
  out["reconstruction"] = r.reconstruction;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_scan(int64 max_order, bool verify, bool as_json, int max_vertices) {
  if (max_order < 2 || max_order > Field::kOrderBound) {
    std::cerr << "gpaley: scan bound out of range\n";
    return kExitInvalid;
  }
  ordered_json rows = ordered_json::array();
  for (int64 p = 2; p <= max_order; ++p) {
    if (!is_prime(p)) continue;
    int64 q = p;
    for (int n = 1; q <= max_order; ++n, q *= p) {
      for (int64 k : divisors(q - 1)) {
        if (p % 2 == 1 && k % 2 == 1) continue;
        auto params = validate_params(p, static_cast<int>(n), k);
        if (!params.connected) continue;
        auto pairs = decomposable_params(params);
        std::string agreement = "-";
        if (verify) {
          if (q > max_vertices)
            agreement = "skip";
          else
            agreement = oracle_agrees(params, pairs, max_vertices) ? "ok" : "FAIL";
        }
        if (as_json) {
          ordered_json row;
          row["p"] = p;
          row["n"] = n;
          row["k"] = k;
          row["decomposable"] = !pairs.empty();
          row["pairs"] = ordered_json::array();
          for (const DecompPair& pr : pairs) row["pairs"].push_back(pair_block(params, pr));
          if (verify) row["oracle"] = agreement;
          rows.push_back(row);
        } else {
          std::cout << p << "\t" << n << "\t" << k << "\t" << pairs_cell(params, pairs)
                    << "\t" << agreement << "\n";
        }
      }
      if (q > max_order / p) break;
    }
  }
  if (as_json) std::cout << rows.dump(2) << "\n";
  return 0;
}

int cmd_export(int64 p, int n, int64 k, const std::string& format) {
  auto params = validate_params(p, n, k);
  Graph g = build(params);
  if (format == "edges")
    write_edge_list(std::cout, g);
  else
    write_dot(std::cout, g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalised Paley graphs: decomposability certificates and witnesses"};
  app.require_subcommand(1);

  int64 p = 0, k = 0, b = 0;
  int n = 0;
  int max_vertices = 2048;
  int64 max_order = 0;
  bool want_aut = false, verify = false, as_json = false, as_tsv = false;
  std::string path, format = "edges";

  auto add_triple = [&](CLI::App* cmd) {
    cmd->add_option("p", p, "field characteristic (prime)")->required();
    cmd->add_option("n", n, "field degree")->required();
    cmd->add_option("k", k, "valency (order of the connection subgroup)")->required();
  };

  CLI::App* check = app.add_subcommand("check", "emit a JSON certificate for one instance");
  add_triple(check);
  check->add_flag("--aut", want_aut, "also compute the full automorphism group order");
  check->add_option("--max-vertices", max_vertices, "bound for the automorphism oracle");

  CLI::App* decompose = app.add_subcommand("decompose", "emit a verified decomposition witness");
  add_triple(decompose);
  decompose->add_option("--b", b, "number of factors (default: maximal valid b)");

  CLI::App* factorize =
      app.add_subcommand("factorize", "prime-factorize a graph given as an edge list");
  factorize->add_option("file", path, "edge-list file, or - for standard input")->required();
  factorize->add_option("--max-vertices", max_vertices, "bound for the factorization oracle");

  CLI::App* scan = app.add_subcommand("scan", "tabulate all connected instances up to a bound");
  scan->add_option("max_order", max_order, "largest p^n to include")->required();
  scan->add_flag("--verify", verify, "cross-check each verdict with the graph-level oracle");
  scan->add_flag("--json", as_json, "emit JSON instead of TSV");
  scan->add_flag("--tsv", as_tsv, "emit TSV (the default)");
  scan->add_option("--max-vertices", max_vertices, "bound for the verification oracle")
      ->default_val(256);

  CLI::App* exp = app.add_subcommand("export", "write the graph as an edge list or DOT");
  add_triple(exp);
  exp->add_option("--format", format, "edges or dot")
      ->check(CLI::IsMember({"edges", "dot"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check)) return cmd_check(p, n, k, want_aut, max_vertices);
    if (app.got_subcommand(decompose)) return cmd_decompose(p, n, k, b);
    if (app.got_subcommand(factorize)) return cmd_factorize(path, max_vertices);
    if (app.got_subcommand(scan)) return cmd_scan(max_order, verify, as_json, max_vertices);
    if (app.got_subcommand(exp)) return cmd_export(p, n, k, format);
  } catch (const verification_error& e) {
    std::cerr << "gpaley: internal verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "gpaley: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
