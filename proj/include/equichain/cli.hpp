#pragma once

#include "equichain/equichain.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace equichain::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kInputError = 2 };

struct Input {
  EquivariantChainComplex complex;
  io::Json document;
};

// FILE may be a path, "-" for stdin, or "builtin:NAME[:PARAMS]".
inline io::Json read_document(const std::string& source, std::istream& in) {
  if (source.rfind("builtin:", 0) == 0) return io::complex_json(spaces::parse_builtin(source.substr(8)));
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(source);
    if (!f) throw Error(ErrorCode::MalformedDocument, "cannot open '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  return io::parse_text(text);
}

// Parses a chain-complex or simplicial document, without validation.
inline Input load(const std::string& source, std::istream& in) {
  Input input;
  io::Json doc = read_document(source, in);
  if (io::is_simplicial_document(doc)) {
    input.complex = to_chain_complex(io::parse_simplicial(doc));
    input.document = io::complex_json(input.complex);
  } else {
    input.complex = io::parse_complex(doc);
    input.document = io::complex_json(input.complex);
  }
  return input;
}

inline Input load_valid(const std::string& source, std::istream& in) {
  Input input = load(source, in);
  require_valid(input.complex);
  return input;
}

inline std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameter, "seed must be a nonnegative integer, got '" + s + "'");
  }
}

// EQUICHAIN_SEED, or 0 when unset.
inline std::uint64_t env_seed() {
  const char* s = std::getenv("EQUICHAIN_SEED");
  return s ? parse_seed(s) : 0;
}

inline Coefficients parse_coefficients(const std::string& s) {
  if (s == "z" || s == "Z") return Coefficients::integers();
  if (s == "q" || s == "Q") return Coefficients::rationals();
  if (s.rfind("zp:", 0) == 0) {
    std::int64_t p = 0;
    try {
      std::size_t used = 0;
      p = std::stoll(s.substr(3), &used);
      if (used != s.size() - 3) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParameter, "coefficient prime must be an integer in '" + s + "'");
    }
    return Coefficients::mod(p);
  }
  throw Error(ErrorCode::BadParameter, "coefficients must be z, q or zp:P, got '" + s + "'");
}

inline std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::BadParameter, "range must look like A..B, got '" + s + "'");
  try {
    const int a = std::stoi(s.substr(0, dots));
    const int b = std::stoi(s.substr(dots + 2));
    if (a > b) throw Error(ErrorCode::BadParameter, "empty range '" + s + "'");
    return {a, b};
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameter, "range must look like A..B, got '" + s + "'");
  }
}

// Descending degrees: "H_1 = 0, H_0 = Z + Z/2".
inline std::string homology_line(const std::vector<AbelianGroup>& gs) {
  std::string out;
  for (int k = static_cast<int>(gs.size()) - 1; k >= 0; --k) {
    if (!out.empty()) out += ", ";
    out += "H_" + std::to_string(k) + " = " + gs[static_cast<std::size_t>(k)].to_string();
  }
  return out.empty() ? "(empty complex)" : out;
}

inline std::string matrix_text(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

inline io::Json matrix_json(const IntMatrix& m) {
  io::Json rows = io::Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    io::Json row = io::Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(io::detail::integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Outcome of one subcommand on one input.
struct Outcome {
  Report report;
  std::vector<std::string> lines;  // plain-text body printed before the report
  io::Json extra = io::Json::object();
};

inline Outcome run_homology(const EquivariantChainComplex& x, const std::string& which, const Coefficients& c) {
  ChainComplex chains;
  if (which == "total") chains = x.chains;
  else if (which == "invariant") chains = invariant_complex(x).chains;
  else if (which == "quotient") chains = coinvariant_complex(x).chains;
  else if (which == "fixed") chains = fixed_complex(x).chains;
  else throw Error(ErrorCode::BadParameter, "--which must be total, invariant, quotient or fixed");
  const auto gs = homology(chains, c).groups();
  Outcome o;
  o.report.title = "homology of the " + which + " complex over " + c.to_string();
  for (int k = static_cast<int>(gs.size()) - 1; k >= 0; --k) o.report.value("H_" + std::to_string(k), gs[static_cast<std::size_t>(k)].to_string());
  o.lines.push_back(homology_line(gs));
  return o;
}

inline Outcome run_les(const EquivariantChainComplex& x, int top) {
  LesOptions opt;
  opt.top = top;
  const auto les = build_les(x, opt);
  Outcome o;
  o.report = check_exact(les);
  io::Json maps = io::Json::array();
  for (std::size_t i = 0; i < les.terms.size(); ++i) {
    o.lines.push_back(les.terms[i].label + " = " + les.terms[i].group.to_string());
    const auto& m = les.maps[i];
    const std::string target = i + 1 < les.terms.size() ? les.terms[i + 1].label : "0";
    o.lines.push_back("   | " + matrix_text(m.matrix) + " -> " + target);
    maps.push_back({{"from", les.terms[i].label}, {"to", target}, {"matrix", matrix_json(m.matrix)}});
  }
  o.extra["maps"] = maps;
  return o;
}

inline Outcome run_hyper(const EquivariantChainComplex& x, const std::string& range, const Coefficients& c) {
  const auto [a, b] = parse_range(range);
  const auto gs = s_groups(x, c, a, b);
  Outcome o;
  o.report.title = "hypercohomology S_n(G,X;" + c.to_string() + ")";
  for (int n = b; n >= a; --n) {
    const auto& g = gs[static_cast<std::size_t>(n - a)];
    o.report.value("S_" + std::to_string(n), g.to_string());
    o.lines.push_back("S_" + std::to_string(n) + " = " + g.to_string());
  }
  return o;
}

inline Outcome run_pages(const EquivariantChainComplex& x, const std::string& filtration, int r, const Coefficients& c, int depth) {
  if (c.kind != Coefficients::Kind::prime) throw Error(ErrorCode::BadParameter, "pages are computed over zp:P only");
  Filtration f;
  if (filtration == "I") f = Filtration::I;
  else if (filtration == "II") f = Filtration::II;
  else throw Error(ErrorCode::BadParameter, "--filtration must be I or II");
  FilteredTotal ft(x, c.p, f);
  const SpectralPage pg = r == 0 ? ft.e_infinity(depth) : ft.page(r, depth);
  Outcome o;
  o.report.title = std::string("spectral page, filtration ") + to_string(f);
  std::istringstream grid(pg.grid());
  for (std::string line; std::getline(grid, line);) o.lines.push_back(line);
  io::Json dims = io::Json::array();
  io::Json diffs = io::Json::array();
  for (int q = pg.q_max; q >= pg.q_min; --q) {
    io::Json row = io::Json::array();
    for (int p = pg.p_min; p <= pg.p_max; ++p) row.push_back(pg.dim(p, q));
    dims.push_back(row);
  }
  for (const auto& [key, m] : pg.differentials) {
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) continue;
    diffs.push_back({{"source", {key.first, key.second}}, {"target", {key.first - r, key.second + r - 1}}, {"matrix", matrix_json(m)}});
    o.lines.push_back("d_" + std::to_string(r) + " (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") -> (" +
                      std::to_string(key.first - r) + "," + std::to_string(key.second + r - 1) + "): " + matrix_text(m));
  }
  o.extra["page"] = r;
  o.extra["p_range"] = {pg.p_min, pg.p_max};
  o.extra["q_range"] = {pg.q_min, pg.q_max};
  o.extra["rows_top_down"] = dims;
  o.extra["differentials"] = diffs;
  return o;
}

inline Outcome run_check(const EquivariantChainComplex& x, const std::string& kind) {
  Outcome o;
  if (kind == "smith") {
    o.report = smith_check(x);
  } else if (kind == "conner") {
    try {
      o.report = conner_check(x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InapplicableHypothesis) throw;
      o.report.title = "Conner conjecture";
      o.report.add_inapplicable("hypothesis", e.what());
    }
  } else if (kind.rfind("coprime:", 0) == 0) {
    std::int64_t l = 0;
    try {
      l = std::stoll(kind.substr(8));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParameter, "coprime check needs coprime:L with L prime");
    }
    o.report = coprime_check(x, l);
  } else if (kind == "free") {
    o.report = free_action_check(x);
  } else if (kind == "collapse") {
    o.report = collapse_check(x, static_cast<std::int64_t>(x.group.order()));
  } else {
    throw Error(ErrorCode::BadParameter, "unknown check '" + kind + "' (smith, conner, coprime:L, free, collapse)");
  }
  return o;
}

inline int verdict_code(const Report& r) { return r.passed() ? kPass : kCheckFailed; }

inline void emit(std::ostream& out, bool json, const std::string& echo, const std::string& digest, const Outcome& o) {
  if (json) {
    io::Json j = io::Json::object();
    j["command"] = echo;
    j["input"] = digest;
    j["report"] = o.report.json();
    for (auto it = o.extra.begin(); it != o.extra.end(); ++it) j[it.key()] = it.value();
    out << j.dump(2) << "\n";
    return;
  }
  out << "command: " << echo << "\n";
  if (!digest.empty()) out << "input: " << digest << "\n";
  for (const auto& l : o.lines) out << l << "\n";
  out << o.report.text();
}

// Runs the CLI; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Equivariant chain complexes: homology, hypercohomology, spectral sequences and theorem checks", "equichain"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable report");

  std::string file, which = "total", coeff = "z", range = "-4..0", filtration = "I", kind, subdivide_str;
  int top = -1, page = 2, depth = -1, subdivide = 0;
  bool all_builtins = false;
  std::size_t fuzz_count = 0;
  std::vector<std::string> spaces_args;

  auto* validate_cmd = app.add_subcommand("validate", "check the chain-level G-CW conditions");
  validate_cmd->add_option("FILE", file, "document, '-' or builtin:NAME")->required();

  auto* homology_cmd = app.add_subcommand("homology", "homology of a derived complex");
  homology_cmd->add_option("FILE", file)->required();
  homology_cmd->add_option("--which", which, "total|invariant|quotient|fixed")->capture_default_str();
  homology_cmd->add_option("--coeff", coeff, "z|q|zp:P")->capture_default_str();

  auto* les_cmd = app.add_subcommand("les", "long exact sequence for a Z/p action");
  les_cmd->add_option("FILE", file)->required();
  les_cmd->add_option("--top", top, "top degree (default: dimension)");

  auto* hyper_cmd = app.add_subcommand("hyper", "hypercohomology groups S_n");
  hyper_cmd->add_option("FILE", file)->required();
  hyper_cmd->add_option("--range", range, "A..B")->capture_default_str();
  hyper_cmd->add_option("--coeff", coeff, "z|zp:P")->capture_default_str();

  auto* pages_cmd = app.add_subcommand("pages", "spectral-sequence page over Z/p");
  pages_cmd->add_option("FILE", file)->required();
  pages_cmd->add_option("--filtration", filtration, "I|II")->capture_default_str();
  pages_cmd->add_option("--page", page, "page index r >= 1; 0 for E-infinity")->capture_default_str();
  pages_cmd->add_option("--coeff", coeff, "zp:P")->required();
  pages_cmd->add_option("--depth", depth, "number of resolution rows shown");

  auto* check_cmd = app.add_subcommand("check", "theorem checks");
  check_cmd->add_option("KIND", kind, "smith|conner|coprime:L|free|collapse")->required();
  check_cmd->add_option("FILE", file);
  check_cmd->add_flag("--all-builtins", all_builtins, "run over the builtin corpus");
  check_cmd->add_option("--fuzz", fuzz_count, "run over N fuzzed complexes seeded from EQUICHAIN_SEED");

  auto* spaces_cmd = app.add_subcommand("spaces", "builtin example spaces");
  spaces_cmd->add_option("ARGS", spaces_args, "list | emit NAME [PARAMS] | emit fuzz [SEED]")->required();

  auto* convert_cmd = app.add_subcommand("convert", "simplicial document to chain-complex document");
  convert_cmd->add_option("FILE", file)->required();
  convert_cmd->add_option("--subdivide", subdivide, "barycentric subdivisions to apply first");

  std::vector<std::string> argv_store{"equichain"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  // Echo of the command without the file argument.
  std::string echo;
  for (const auto& a : args) {
    if (a == file && !file.empty()) continue;
    if (a == "--json") continue;
    if (!echo.empty()) echo += " ";
    echo += a;
  }

  try {
    if (*validate_cmd) {
      Input input = load(file, in);
      const auto diags = validate(input.complex);
      Outcome o;
      o.report.title = "validation";
      o.report.value("group", input.complex.group.describe());
      o.report.value("cells", [&] {
        std::string s;
        for (auto c : input.complex.chains.cells) s += (s.empty() ? "" : " ") + std::to_string(c);
        return "(" + s + ")";
      }());
      std::vector<std::string> w;
      for (const auto& d : diags) w.push_back(d.message);
      o.report.add("valid", diags.empty(), diags.empty() ? "" : std::to_string(diags.size()) + " violation(s)", w);
      emit(out, json, echo, io::digest(input.document), o);
      return verdict_code(o.report);
    }
    if (*spaces_cmd) {
      if (spaces_args[0] == "list") {
        for (const auto& e : spaces::catalog())
          out << e.name << (e.parameters.empty() ? "" : " " + e.parameters) << "\n    " << e.description << "\n";
        return kPass;
      }
      if (spaces_args[0] == "emit" && spaces_args.size() >= 2 && spaces_args[1] == "fuzz") {
        const std::uint64_t seed = spaces_args.size() > 2 ? parse_seed(spaces_args[2]) : env_seed();
        out << io::complex_json(spaces::fuzz(seed)).dump(2) << "\n";
        return kPass;
      }
      if (spaces_args[0] == "emit" && spaces_args.size() >= 2) {
        const auto x = spaces::builtin(spaces_args[1], std::vector<std::string>(spaces_args.begin() + 2, spaces_args.end()));
        out << io::complex_json(x).dump(2) << "\n";
        return kPass;
      }
      err << "error: usage: spaces list | spaces emit NAME [PARAMS]\n";
      return kInputError;
    }
    if (*convert_cmd) {
      const io::Json doc = read_document(file, in);
      if (!io::is_simplicial_document(doc)) throw Error(ErrorCode::MalformedDocument, "field 'facets': missing (not a simplicial document)");
      auto k = io::parse_simplicial(doc);
      for (int i = 0; i < subdivide; ++i) k = barycentric_subdivision(k);
      out << io::complex_json(to_chain_complex(k)).dump(2) << "\n";
      return kPass;
    }
    if (*check_cmd && (all_builtins || fuzz_count > 0)) {
      // Batch mode: examples run concurrently, results are printed in name order.
      std::vector<std::pair<std::string, std::function<EquivariantChainComplex()>>> examples;
      if (all_builtins)
        for (const auto& name : spaces::builtin_corpus()) examples.emplace_back(name, [name] { return spaces::parse_builtin(name); });
      const std::uint64_t base = env_seed();
      for (std::size_t i = 0; i < fuzz_count; ++i) {
        const std::uint64_t seed = base + i;
        examples.emplace_back("fuzz:" + std::to_string(seed), [seed] { return spaces::fuzz(seed); });
      }
      std::vector<std::future<Outcome>> jobs;
      for (const auto& [name, make] : examples)
        jobs.push_back(std::async(std::launch::async, [make = make, kind] {
          Outcome o;
          try {
            o = run_check(make(), kind);
          } catch (const Error& e) {
            o.report.title = kind;
            o.report.add_inapplicable("precondition", e.what());
          }
          return o;
        }));
      std::vector<std::pair<std::string, Outcome>> results;
      for (std::size_t i = 0; i < jobs.size(); ++i) results.emplace_back(examples[i].first, jobs[i].get());
      if (all_builtins && fuzz_count == 0)
        std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      bool ok = true;
      io::Json all = io::Json::array();
      if (!json) out << "command: " << echo << "\n";
      for (const auto& [name, o] : results) {
        ok = ok && o.report.passed();
        if (json) all.push_back({{"example", name}, {"report", o.report.json()}});
        else out << "== " << name << "\n" << o.report.text();
      }
      if (json) out << io::Json({{"command", echo}, {"results", all}}).dump(2) << "\n";
      return ok ? kPass : kCheckFailed;
    }
    if (file.empty()) throw Error(ErrorCode::BadParameter, "FILE is required");
    Input input = load_valid(file, in);
    const std::string digest = io::digest(input.document);
    Outcome o;
    if (*homology_cmd) o = run_homology(input.complex, which, parse_coefficients(coeff));
    else if (*les_cmd) o = run_les(input.complex, top);
    else if (*hyper_cmd) o = run_hyper(input.complex, range, parse_coefficients(coeff));
    else if (*pages_cmd) o = run_pages(input.complex, filtration, page, parse_coefficients(coeff), depth);
    else o = run_check(input.complex, kind);
    emit(out, json, echo, digest, o);
    return verdict_code(o.report);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace equichain::cli
