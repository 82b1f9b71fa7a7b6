#include "zpr/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zpr/block_code.hpp"
#include "zpr/code_file.hpp"
#include "zpr/conv_code.hpp"
#include "zpr/errors.hpp"
#include "zpr/mdp_lift.hpp"
#include "zpr/p_module.hpp"

namespace zpr {

namespace {

using json = nlohmann::ordered_json;

// Bad flag values; reported with the usage exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
  bool machine = false;

  DistanceOptions distance() const { return {budget, workers}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "Candidate inputs allowed per exhaustive search")
      ->envname("ZPR_BUDGET")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Threads used by distance searches")
      ->envname("ZPR_WORKERS")
      ->check(CLI::Range(1u, 256u));
  cmd->add_flag("--machine-readable", c.machine, "Print the report as JSON");
}

std::string rational_text(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string list_text(const std::vector<std::size_t>& v, const char* open = "(", const char* close = ")") {
  std::string s = open;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + close;
}

std::string blocks_text(const std::vector<Vector>& blocks) {
  std::string s;
  for (const auto& b : blocks) {
    s += "[";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    s += "]";
  }
  return s.empty() ? "-" : s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string ring_name(const RingParams& ring) { return "Z_" + std::to_string(ring.modulus()); }

json input_echo(const CodeFile& f) {
  return {{"p", f.matrix.ring().p()},     {"r", f.matrix.ring().r()},   {"kind", to_string(f.kind)},
          {"role", to_string(f.role)},    {"rows", f.matrix.rows()},    {"cols", f.matrix.cols()}};
}

std::string echo_line(const CodeFile& f) {
  return to_string(f.kind) + " " + to_string(f.role) + " over " + ring_name(f.matrix.ring()) + ", " +
         std::to_string(f.matrix.rows()) + " x " + std::to_string(f.matrix.cols());
}

json bounds_json(const BoundSet& b) {
  return {{"SB", b.singleton.sb}, {"phi", rational_text(b.singleton.phi)}, {"L", b.l.L}, {"X", rational_text(b.l.X)}};
}

void print_bounds(std::ostream& out, const BoundSet& b) {
  out << "bounds: SB " << b.singleton.sb << ", phi " << rational_text(b.singleton.phi) << ", L " << b.l.L << ", X "
      << rational_text(b.l.X) << "\n";
}

// Prefixes every line, used to append a report to a code file on stdout.
std::string prefixed(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += prefix + line + "\n";
  return out;
}

struct ProfileReport {
  json machine = json::array();
  std::string human;
  bool complete = true;
  std::optional<bool> mdp;
};

// Profile table for j <= jmax plus the MDP verdict when jmax reaches L.
ProfileReport profile_report(const ConvCode& code, const BoundSet& b, std::size_t jmax, const Common& c) {
  ProfileReport rep;
  const DistanceProfile prof = distance_profile(code, jmax, c.distance(), true);
  rep.complete = prof.complete();
  std::ostringstream h;
  h << std::left << std::setw(4) << "j" << std::setw(8) << "d^c_j" << std::setw(6) << "B(j)" << std::setw(13)
    << "status" << std::setw(14) << "searched" << "witness\n";
  bool meets = true;
  for (const auto& e : prof.entries) {
    const std::size_t B = b.B(e.j);
    const long double searched = column_candidates(code.ring(), code.k(), e.j);
    const std::string status = !e.exact ? "lower-bound" : (e.value == B ? "meets B" : "below B");
    if (e.j <= b.l.L && (!e.exact || e.value != B)) meets = false;
    json w = json::array();
    for (const auto& blk : e.witness) w.push_back(blk);
    rep.machine.push_back({{"j", e.j},
                           {"d", e.value},
                           {"B", B},
                           {"status", e.exact ? "exact" : "lower-bound"},
                           {"searched", e.exact ? json(static_cast<double>(searched)) : json(nullptr)},
                           {"witness", w}});
    std::ostringstream s;
    s << std::setprecision(15) << searched;
    h << std::setw(4) << e.j << std::setw(8) << e.value << std::setw(6) << B << std::setw(13) << status
      << std::setw(14) << (e.exact ? s.str() : "-") << blocks_text(e.witness) << "\n";
  }
  rep.human = h.str();
  if (jmax >= b.l.L) {
    bool exact_up_to_L = true;
    for (const auto& e : prof.entries)
      if (e.j <= b.l.L && !e.exact) exact_up_to_L = false;
    if (exact_up_to_L) rep.mdp = meets;
  }
  return rep;
}

int analyze_block(const CodeFile& f, const Common& c, std::ostream& out) {
  const RingParams& ring = f.matrix.ring();
  const Matrix g = f.matrix.at_zero();
  if (f.role == MatrixRole::p_encoder) {
    if (!is_p_generator_sequence(f.matrix) || !is_p_independent(f.matrix)) {
      throw InvalidArgument("the rows are not a p-basis, so the file cannot have role p-encoder");
    }
  }
  const BlockCode code(ring, g);
  const Matrix encoder = f.role == MatrixRole::p_encoder ? g : p_standard_form(code.standard());
  const std::size_t n = code.length();
  const ParameterSet& params = code.parameters();
  const std::size_t sb = singleton_bound_params(n, params);
  json rep = {{"command", "analyze"}, {"input", input_echo(f)}, {"n", n}, {"k", params.p_dimension()},
              {"parameters", params.k}};
  if (params.total() == 0) {
    rep["distance"] = nullptr;
    if (c.machine) {
      out << rep.dump(2) << "\n";
    } else {
      out << "code: " << echo_line(f) << "\nthe zero code has no minimum distance\n";
    }
    return exit_ok;
  }
  const double searched = std::pow(static_cast<double>(ring.p()), static_cast<double>(encoder.rows())) - 1;
  const std::size_t d = block_free_distance(ring, encoder, c.budget);
  rep["distance"] = {{"d", d}, {"searched", searched}};
  rep["singleton"] = sb;
  rep["mds"] = d == sb;
  if (c.machine) {
    out << rep.dump(2) << "\n";
  } else {
    out << "code: " << echo_line(f) << "\n"
        << "n " << n << ", p-dimension " << params.p_dimension() << ", parameters " << list_text(params.k) << "\n"
        << "minimum distance " << d << " (" << std::setprecision(15) << searched << " inputs searched)\n"
        << "Singleton bound " << sb << "\n"
        << "MDS: " << yes_no(d == sb) << "\n";
  }
  return exit_ok;
}

ConvCode conv_code_of(const CodeFile& f, std::optional<Decomposition>& dec) {
  if (f.role == MatrixRole::p_encoder) return ConvCode(f.matrix);
  dec = decompose(f.matrix);
  return ConvCode(expanded_p_encoder(*dec, f.matrix.ring(), f.matrix.cols()));
}

int analyze(const std::string& path, std::optional<std::size_t> jmax_opt, const Common& c, std::ostream& out) {
  const CodeFile f = read_code_file(path);
  if (f.kind == CodeKind::block) return analyze_block(f, c, out);
  std::optional<Decomposition> dec;
  const ConvCode code = conv_code_of(f, dec);
  const RingParams& ring = code.ring();
  const std::size_t n = code.length(), k = code.k(), delta = code.delta();
  const ParameterSet params = conv_parameters(code);
  json rep = {{"command", "analyze"}, {"input", input_echo(f)}, {"n", n}, {"k", k}, {"delta", delta},
              {"parameters", params.k}};
  rep["layers"] = code.layer_parameters() ? json(*code.layer_parameters()) : json(nullptr);
  rep["delay_free"] = code.delay_free();
  rep["reduced"] = code.reduced();
  std::ostringstream h;
  h << "code: " << echo_line(f) << "\n";
  if (dec) h << "expanded from the generator rows into " << k << " p-encoder rows\n";
  h << "n " << n << ", k " << k << ", delta " << delta << "\n"
    << "parameters k_i " << list_text(params.k) << ", layers l_i "
    << (code.layer_parameters() ? list_text(*code.layer_parameters()) : std::string("n/a")) << "\n"
    << "delay-free: " << yes_no(code.delay_free()) << ", reduced: " << yes_no(code.reduced()) << "\n";

  std::optional<BoundSet> b;
  if ((k + static_cast<std::size_t>(ring.r()) - 1) / static_cast<std::size_t>(ring.r()) < n) b = bound_set(n, k, ring.r(), delta);
  rep["bounds"] = b ? bounds_json(*b) : json(nullptr);
  if (b) {
    print_bounds(h, *b);
  } else {
    h << "bounds: n/a (ceil(k/r) >= n)\n";
  }

  int code_out = exit_ok;
  if (!code.delay_free()) {
    rep["profile"] = nullptr;
    rep["complete"] = true;
    rep["mdp"] = false;
    h << "column distances need a delay-free encoder\nMDP: no\n";
  } else if (!b) {
    rep["profile"] = nullptr;
    rep["complete"] = true;
    rep["mdp"] = nullptr;
  } else {
    const std::size_t jmax = jmax_opt.value_or(b->l.L);
    const ProfileReport pr = profile_report(code, *b, jmax, c);
    rep["profile"] = pr.machine;
    rep["complete"] = pr.complete;
    rep["mdp"] = pr.mdp ? json(*pr.mdp) : json(nullptr);
    h << pr.human << "MDP: " << (pr.mdp ? yes_no(*pr.mdp) : std::string("not certified")) << "\n";
    if (!pr.complete) {
      h << "budget exhausted: later entries are lower bounds\n";
      code_out = exit_budget;
    }
  }
  out << (c.machine ? rep.dump(2) + "\n" : h.str());
  return code_out;
}

void check_lift_parameters(std::size_t n, std::size_t k, std::size_t delta, int r) {
  if (k == 0) throw UsageError("--k must be positive");
  if (delta % k != 0) {
    throw UsageError("the lifting construction needs k to divide delta (k = " + std::to_string(k) +
                     ", delta = " + std::to_string(delta) + ")");
  }
  if ((k + static_cast<std::size_t>(r) - 1) / static_cast<std::size_t>(r) >= n) {
    throw UsageError("the construction needs ceil(k/r) < n");
  }
}

int construct(std::size_t n, std::size_t k, std::size_t delta, Scalar p, int r, std::optional<std::uint64_t> seed,
              std::uint64_t cap, const std::string& out_path, const Common& c, std::ostream& out) {
  check_lift_parameters(n, k, delta, r);
  FieldSearch search;
  search.cap = cap;
  search.distance = c.distance();
  if (seed) {
    search.mode = SearchMode::random;
    search.seed = *seed;
  }
  const MdpConstruction m = construct_mdp(n, k, delta, p, r, search);
  CodeFile f;
  f.kind = CodeKind::convolutional;
  f.role = MatrixRole::p_encoder;
  f.matrix = m.code.encoder();
  const BoundSet b = bound_set(n, k, r, delta);
  const ProfileReport pr = profile_report(m.code, b, b.l.L, c);
  const std::string text = write_code_text(f);
  if (!out_path.empty()) write_code_file(out_path, f);

  json rep = {{"command", "construct"},
              {"n", n},
              {"k", k},
              {"delta", delta},
              {"p", p},
              {"r", r},
              {"search", seed ? "random" : "exhaustive"},
              {"seed", seed ? json(*seed) : json(nullptr)},
              {"attempts", m.field.attempts},
              {"field", {{"k", m.spec.k_tilde}, {"delta", m.spec.delta_tilde}, {"L", m.spec.L_tilde},
                         {"profile", m.field.profile}}},
              {"bounds", bounds_json(b)},
              {"profile", pr.machine},
              {"mdp", m.check.is_mdp},
              {"code", text}};
  if (c.machine) {
    out << rep.dump(2) << "\n";
    return exit_ok;
  }
  std::ostringstream h;
  h << "MDP (" << n << "," << k << "," << delta << ") code over " << ring_name(m.code.ring()) << "\n"
    << "field code over Z_" << p << ": k " << m.spec.k_tilde << ", delta " << m.spec.delta_tilde << ", L "
    << m.spec.L_tilde << ", found after " << m.field.attempts << " candidates ("
    << (seed ? "random, seed " + std::to_string(*seed) : std::string("exhaustive")) << ")\n";
  print_bounds(h, b);
  h << pr.human << "MDP: " << yes_no(m.check.is_mdp) << "\n";
  if (out_path.empty()) {
    out << text << prefixed(h.str(), "# ");
  } else {
    out << h.str() << "wrote " << out_path << "\n";
  }
  return exit_ok;
}

int canonicalize(const std::string& path, bool p_encoder, const std::string& out_path, const Common& c,
                 std::ostream& out) {
  const CodeFile f = read_code_file(path);
  CodeFile g;
  g.kind = f.kind;
  std::vector<std::size_t> perm;
  std::string what;
  if (f.kind == CodeKind::block) {
    const StandardForm s = standard_form(f.matrix.ring(), f.matrix.at_zero());
    perm = s.perm;
    g.role = p_encoder ? MatrixRole::p_encoder : MatrixRole::generator;
    const Matrix m = p_encoder ? p_standard_form(s) : s.matrix;
    if (m.rows() == 0) throw InvalidArgument("the zero code has no standard form");
    g.matrix = PolyMatrix::constant(f.matrix.ring(), m);
    what = p_encoder ? "p-standard form" : "standard form";
  } else {
    g.role = MatrixRole::p_encoder;
    g.matrix = reduced_p_basis_of_span(f.matrix);
    if (g.matrix.rows() == 0) throw InvalidArgument("the zero code has no reduced p-basis");
    what = "reduced p-basis";
  }
  const std::string text = write_code_text(g);
  if (!out_path.empty()) write_code_file(out_path, g);
  if (c.machine) {
    json rep = {{"command", "canonicalize"}, {"input", input_echo(f)}, {"form", what},
                {"column_order", perm.empty() ? json(nullptr) : json(perm)}, {"code", text}};
    out << rep.dump(2) << "\n";
  } else if (out_path.empty()) {
    out << "# " << what << "\n";
    if (!perm.empty()) out << "# column order " << list_text(perm, "", "") << " (0-based input columns)\n";
    out << text;
  } else {
    out << what << " written to " << out_path << "\n";
  }
  return exit_ok;
}

int bounds(std::size_t n, std::size_t k, int r, std::size_t delta, std::optional<std::size_t> jmax, const Common& c,
           std::ostream& out) {
  if (k == 0) throw UsageError("--k must be positive");
  if ((k + static_cast<std::size_t>(r) - 1) / static_cast<std::size_t>(r) >= n) {
    throw UsageError("the bounds need ceil(k/r) < n");
  }
  const BoundSet b = bound_set(n, k, r, delta);
  const std::size_t last = jmax.value_or(b.l.L);
  std::vector<std::size_t> B;
  for (std::size_t j = 0; j <= last; ++j) B.push_back(b.B(j));
  if (c.machine) {
    json rep = {{"command", "bounds"}, {"n", n}, {"k", k}, {"r", r}, {"delta", delta}};
    const json bj = bounds_json(b);
    for (const auto& [key, v] : bj.items()) rep[key] = v;
    rep["B"] = B;
    out << rep.dump(2) << "\n";
  } else {
    out << "(n,k,delta) = (" << n << "," << k << "," << delta << "), r " << r << "\n";
    print_bounds(out, b);
    out << "B(0.." << last << ") = " << list_text(B) << "\n";
  }
  return exit_ok;
}

int optimal_params(std::size_t k, int r, const Common& c, std::ostream& out) {
  if (k == 0) throw UsageError("--k must be positive");
  const std::vector<ParameterSet> opt = r_optimal_parameters(k, r);
  if (c.machine) {
    json list = json::array();
    for (const auto& s : opt) list.push_back(s.k);
    json rep = {{"command", "optimal-params"}, {"k", k}, {"r", r}, {"rows", opt.front().total()}, {"optima", list}};
    out << rep.dump(2) << "\n";
  } else {
    out << "r-optimal parameters for k " << k << ", r " << r << " (" << opt.front().total() << " rows):\n";
    for (const auto& s : opt) out << "  " << list_text(s.k) << "\n";
  }
  return exit_ok;
}

std::string matrix_text(const PolyMatrix& m) {
  CodeFile f;
  f.matrix = m;
  const std::string full = write_code_text(f);
  // keep only the rows
  std::size_t pos = 0;
  for (int i = 0; i < 7; ++i) pos = full.find('\n', pos) + 1;
  return full.substr(pos);
}

int decompose_cmd(const std::string& path, const std::string& out_path, const Common& c, std::ostream& out) {
  const CodeFile f = read_code_file(path);
  const Decomposition d = decompose(f.matrix);
  CodeFile e;
  e.kind = f.kind;
  e.role = MatrixRole::p_encoder;
  e.matrix = expanded_p_encoder(d, f.matrix.ring(), f.matrix.cols());
  if (!out_path.empty()) write_code_file(out_path, e);
  if (c.machine) {
    json layers = json::array();
    for (const auto& l : d.layers) layers.push_back(matrix_text(l));
    json rep = {{"command", "decompose"},   {"input", input_echo(f)},
                {"ranks", d.ranks},         {"polynomial_span_preserved", d.polynomial_span_preserved},
                {"layers", layers},         {"p_encoder", write_code_text(e)}};
    out << rep.dump(2) << "\n";
    return exit_ok;
  }
  out << "code: " << echo_line(f) << "\nlayer ranks l_i " << list_text(d.ranks) << "\n";
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    out << "layer " << i << " (times p^" << i << "):\n" << prefixed(matrix_text(d.layers[i]), "  ");
  }
  if (!d.polynomial_span_preserved) {
    out << "note: some rows were multiplied by nonconstant polynomials; the layers span the same code over "
           "Laurent series\n";
  }
  out << "expanded p-encoder:\n" << prefixed(matrix_text(e.matrix), "  ");
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convolutional and block codes over Z_{p^r}", "zprcode"};
  app.require_subcommand(1);
  Common common;

  std::string file, out_path;
  std::optional<std::size_t> jmax;
  std::size_t n = 0, k = 0, delta = 0;
  Scalar p = 0;
  int r = 1;
  std::optional<std::uint64_t> seed;
  std::uint64_t cap = 1'000'000;
  bool p_encoder = false;

  auto* an = app.add_subcommand("analyze", "Parameters, bounds and column distance profile of a code file");
  an->add_option("file", file, "Code file (.json selects the JSON reader)")->required();
  an->add_option("--jmax", jmax, "Largest column distance index (default L)");
  add_common(an, common);

  auto* co = app.add_subcommand("construct", "Build and certify an MDP code by lifting a field code");
  co->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  co->add_option("--k", k)->required();
  co->add_option("--delta", delta)->required();
  co->add_option("--p", p)->required();
  co->add_option("--r", r)->required()->check(CLI::Range(1, 62));
  co->add_option("--seed", seed, "Search field encoders at random with this seed (default: exhaustive)");
  co->add_option("--cap", cap, "Largest number of field candidates")->check(CLI::PositiveNumber);
  co->add_option("--out", out_path, "Write the code file here instead of stdout");
  add_common(co, common);

  auto* ca = app.add_subcommand("canonicalize", "Standard form (block) or reduced p-basis (convolutional)");
  ca->add_option("file", file)->required();
  ca->add_flag("--p-encoder", p_encoder, "Block codes: emit the p-standard form");
  ca->add_option("--out", out_path);
  add_common(ca, common);

  auto* bo = app.add_subcommand("bounds", "Singleton-type bounds and B(j)");
  bo->add_option("--n", n)->required();
  bo->add_option("--k", k)->required();
  bo->add_option("--r", r)->required()->check(CLI::Range(1, 62));
  bo->add_option("--delta", delta)->required();
  bo->add_option("--jmax", jmax);
  add_common(bo, common);

  auto* op = app.add_subcommand("optimal-params", "All r-optimal parameter tuples for p-dimension k");
  op->add_option("--k", k)->required();
  op->add_option("--r", r)->required()->check(CLI::Range(1, 62));
  add_common(op, common);

  auto* de = app.add_subcommand("decompose", "Layered decomposition of a generator matrix");
  de->add_option("file", file)->required();
  de->add_option("--out", out_path);
  add_common(de, common);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (an->parsed()) return analyze(file, jmax, common, out);
    if (co->parsed()) return construct(n, k, delta, p, r, seed, cap, out_path, common, out);
    if (ca->parsed()) return canonicalize(file, p_encoder, out_path, common, out);
    if (bo->parsed()) return bounds(n, k, r, delta, jmax, common, out);
    if (op->parsed()) return optimal_params(k, r, common, out);
    if (de->parsed()) return decompose_cmd(file, out_path, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_validation;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << " (needs " << static_cast<double>(e.required()) << ", budget "
        << e.budget() << ")\n";
    return exit_budget;
  } catch (const ConstructionFailure& e) {
    err << "construction failed after " << e.attempts() << " attempts: " << e.what() << "\n";
    return exit_construction;
  } catch (const DegenerateDecomposition& e) {
    err << "degenerate decomposition: " << e.what() << "\n";
    return exit_validation;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return exit_validation;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_usage;
}

}  // namespace zpr
