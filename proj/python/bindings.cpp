#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zpr/block_code.hpp"
#include "zpr/code_file.hpp"
#include "zpr/conv_code.hpp"
#include "zpr/errors.hpp"
#include "zpr/mdp_lift.hpp"
#include "zpr/p_module.hpp"

namespace py = pybind11;
using namespace zpr;

namespace {

// Matrices cross the boundary as nested lists: matrix[i][j] is the list of
// coefficients of cell (i, j), lowest power first.
using Cells = std::vector<std::vector<Poly>>;

PolyMatrix to_poly(const RingParams& ring, const Cells& cells) {
  if (cells.empty()) throw InvalidArgument("a matrix needs at least one row");
  const std::size_t cols = cells.front().size();
  for (const auto& row : cells)
    if (row.size() != cols) throw InvalidArgument("rows have different lengths");
  return PolyMatrix::from_entries(ring, cells, cols);
}

Cells to_cells(const PolyMatrix& m) {
  Cells out;
  for (const auto& row : m.row_list()) {
    std::vector<Poly> r;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Poly e = row.entry(j);
      if (e.empty()) e.push_back(0);
      r.push_back(std::move(e));
    }
    out.push_back(std::move(r));
  }
  return out;
}

Matrix to_scalar(const RingParams& ring, const Cells& cells) {
  const PolyMatrix m = to_poly(ring, cells);
  if (m.degree().value_or(0) > 0) throw InvalidArgument("block code matrices must be constant");
  return m.at_zero();
}

Cells scalar_cells(const RingParams& ring, const Matrix& m) { return to_cells(PolyMatrix::constant(ring, m)); }

py::object fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(q.numerator(), q.denominator());
}

py::list witness_list(const std::vector<Vector>& w) {
  py::list out;
  for (const auto& b : w) out.append(py::cast(b));
  return out;
}

py::dict entry_dict(const DistanceEntry& e) {
  py::dict d;
  d["j"] = e.j;
  d["value"] = e.value;
  d["exact"] = e.exact;
  d["witness"] = witness_list(e.witness);
  return d;
}

py::dict bounds_dict(std::size_t n, std::size_t k, int r, std::size_t delta, std::optional<std::size_t> jmax) {
  const BoundSet b = bound_set(n, k, r, delta);
  py::dict d;
  d["SB"] = b.singleton.sb;
  d["phi"] = fraction(b.singleton.phi);
  d["L"] = b.l.L;
  d["X"] = fraction(b.l.X);
  std::vector<std::size_t> B;
  for (std::size_t j = 0; j <= jmax.value_or(b.l.L); ++j) B.push_back(b.B(j));
  d["B"] = B;
  return d;
}

}  // namespace

PYBIND11_MODULE(zprcodes, m) {
  m.doc() = "Block and convolutional codes over Z_{p^r}";

  auto error = py::register_exception<Error>(m, "ZprError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<DegenerateDecomposition>(m, "DegenerateDecomposition", error.ptr());
  py::register_exception<ConstructionFailure>(m, "ConstructionFailure", error.ptr());
  py::register_exception<InternalInconsistency>(m, "InternalInconsistency", error.ptr());

  m.def("padic_digits", [](Scalar p, int r, Scalar x) { return padic_digits(Residue(RingParams(p, r), x)).digits; },
        py::arg("p"), py::arg("r"), py::arg("x"));

  // p-modules
  m.def("is_p_generator_sequence",
        [](Scalar p, int r, const Cells& g) { return is_p_generator_sequence(to_poly(RingParams(p, r), g)); },
        py::arg("p"), py::arg("r"), py::arg("matrix"));
  m.def("is_p_independent",
        [](Scalar p, int r, const Cells& g) { return is_p_independent(to_poly(RingParams(p, r), g)); },
        py::arg("p"), py::arg("r"), py::arg("matrix"));
  m.def(
      "p_span_membership",
      [](Scalar p, int r, const std::vector<Poly>& v, const Cells& g) -> std::optional<std::vector<Poly>> {
        const RingParams ring(p, r);
        const auto c = p_span_membership(PolyVec::from_entries(ring, v), to_poly(ring, g));
        if (!c) return std::nullopt;
        return c->coefficients;
      },
      py::arg("p"), py::arg("r"), py::arg("vector"), py::arg("matrix"),
      "Coefficients a_j(D) with digits in {0..p-1} such that v = sum a_j g_j, or None.");
  m.def("reduced_p_basis",
        [](Scalar p, int r, const Cells& g) { return to_cells(reduced_p_basis_of_span(to_poly(RingParams(p, r), g))); },
        py::arg("p"), py::arg("r"), py::arg("matrix"), "Reduced p-basis of the module generated by the rows.");
  m.def("p_dimension", [](Scalar p, int r, const Cells& g) { return p_dimension(to_poly(RingParams(p, r), g)); },
        py::arg("p"), py::arg("r"), py::arg("matrix"));
  m.def("p_degree", [](Scalar p, int r, const Cells& g) { return p_degree(to_poly(RingParams(p, r), g)); },
        py::arg("p"), py::arg("r"), py::arg("matrix"));

  // block codes
  m.def(
      "standard_form",
      [](Scalar p, int r, const Cells& g) {
        const RingParams ring(p, r);
        const StandardForm s = standard_form(ring, to_scalar(ring, g));
        py::dict d;
        d["matrix"] = scalar_cells(ring, s.matrix);
        d["perm"] = s.perm;
        d["parameters"] = s.params.k;
        return d;
      },
      py::arg("p"), py::arg("r"), py::arg("matrix"));
  m.def(
      "p_standard_form",
      [](Scalar p, int r, const Cells& g) {
        const RingParams ring(p, r);
        return scalar_cells(ring, p_standard_form(standard_form(ring, to_scalar(ring, g))));
      },
      py::arg("p"), py::arg("r"), py::arg("matrix"), "p-encoder built from the standard form, in its permuted columns.");
  m.def(
      "block_distance",
      [](Scalar p, int r, const Cells& g, std::uint64_t budget) {
        const RingParams ring(p, r);
        return block_free_distance(ring, p_standard_form(standard_form(ring, to_scalar(ring, g))), budget);
      },
      py::arg("p"), py::arg("r"), py::arg("matrix"), py::arg("budget") = 100'000'000);
  m.def("r_optimal_parameters",
        [](std::size_t k, int r) {
          std::vector<std::vector<std::size_t>> out;
          for (const auto& s : r_optimal_parameters(k, r)) out.push_back(s.k);
          return out;
        },
        py::arg("k"), py::arg("r"));

  // convolutional codes
  py::class_<ConvCode>(m, "ConvCode")
      .def(py::init([](Scalar p, int r, const Cells& g) { return ConvCode(to_poly(RingParams(p, r), g)); }),
           py::arg("p"), py::arg("r"), py::arg("matrix"))
      .def_property_readonly("n", &ConvCode::length)
      .def_property_readonly("k", &ConvCode::k)
      .def_property_readonly("delta", &ConvCode::delta)
      .def_property_readonly("delay_free", &ConvCode::delay_free)
      .def_property_readonly("reduced", &ConvCode::reduced)
      .def_property_readonly("parameters", [](const ConvCode& c) { return conv_parameters(c).k; })
      .def_property_readonly("encoder", [](const ConvCode& c) { return to_cells(c.encoder()); })
      .def(
          "column_distance",
          [](const ConvCode& c, std::size_t j, std::uint64_t budget, unsigned workers) {
            DistanceEntry e;
            {
              py::gil_scoped_release release;
              e = column_distance(c, j, {budget, workers});
            }
            return entry_dict(e);
          },
          py::arg("j"), py::arg("budget") = 100'000'000, py::arg("workers") = 1)
      .def(
          "profile",
          [](const ConvCode& c, std::size_t jmax, std::uint64_t budget, unsigned workers) {
            const DistanceProfile prof = distance_profile(c, jmax, {budget, workers});
            return prof.values();
          },
          py::arg("jmax"), py::arg("budget") = 100'000'000, py::arg("workers") = 1)
      .def(
          "is_mdp",
          [](const ConvCode& c, std::uint64_t budget, unsigned workers) {
            const MdpCheck chk = is_MDP(c, {budget, workers});
            py::dict d;
            d["mdp"] = chk.is_mdp;
            d["L"] = chk.L;
            d["profile"] = chk.profile.values();
            return d;
          },
          py::arg("budget") = 100'000'000, py::arg("workers") = 1);

  m.def("bounds", &bounds_dict, py::arg("n"), py::arg("k"), py::arg("r"), py::arg("delta"),
        py::arg("jmax") = py::none(), "Generalized Singleton bound, phi, L, X and B(0..jmax).");
  m.def(
      "decompose",
      [](Scalar p, int r, const Cells& g) {
        const RingParams ring(p, r);
        const PolyMatrix pm = to_poly(ring, g);
        const Decomposition d = decompose(pm);
        py::list layers;
        for (const auto& l : d.layers) layers.append(l.empty() ? py::list() : py::cast(to_cells(l)));
        py::dict out;
        out["layers"] = layers;
        out["ranks"] = d.ranks;
        out["polynomial_span_preserved"] = d.polynomial_span_preserved;
        out["p_encoder"] = to_cells(expanded_p_encoder(d, ring, pm.cols()));
        return out;
      },
      py::arg("p"), py::arg("r"), py::arg("matrix"));
  m.def(
      "construct_mdp",
      [](std::size_t n, std::size_t k, std::size_t delta, Scalar p, int r, std::optional<std::uint64_t> seed,
         std::uint64_t cap) {
        FieldSearch s;
        s.cap = cap;
        if (seed) {
          s.mode = SearchMode::random;
          s.seed = *seed;
        }
        const MdpConstruction c = construct_mdp(n, k, delta, p, r, s);
        py::dict d;
        d["matrix"] = to_cells(c.code.encoder());
        d["field_matrix"] = to_cells(c.field.matrix);
        d["attempts"] = c.field.attempts;
        d["L"] = c.check.L;
        d["profile"] = c.check.profile.values();
        d["mdp"] = c.check.is_mdp;
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("p"), py::arg("r"), py::arg("seed") = py::none(),
      py::arg("cap") = 1'000'000);

  // code files
  m.def(
      "parse_code",
      [](const std::string& text) {
        const CodeFile f = parse_code_text(text);
        py::dict d;
        d["p"] = f.matrix.ring().p();
        d["r"] = f.matrix.ring().r();
        d["kind"] = to_string(f.kind);
        d["role"] = to_string(f.role);
        d["matrix"] = to_cells(f.matrix);
        return d;
      },
      py::arg("text"));
  m.def(
      "format_code",
      [](Scalar p, int r, const Cells& g, const std::string& kind, const std::string& role) {
        CodeFile f;
        f.matrix = to_poly(RingParams(p, r), g);
        if (kind != "block" && kind != "convolutional") throw InvalidArgument("unknown kind '" + kind + "'");
        if (role != "generator" && role != "p-encoder") throw InvalidArgument("unknown role '" + role + "'");
        f.kind = kind == "block" ? CodeKind::block : CodeKind::convolutional;
        f.role = role == "generator" ? MatrixRole::generator : MatrixRole::p_encoder;
        return write_code_text(f);
      },
      py::arg("p"), py::arg("r"), py::arg("matrix"), py::arg("kind") = "convolutional",
      py::arg("role") = "p-encoder");
}
