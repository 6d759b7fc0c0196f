// Python bindings for the main operations. Exact values cross the language
// boundary as the JSON serialization (see json_io); counts and moduli are
// plain Python ints, converted through decimal strings so arbitrary
// precision survives.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qgauss/counting.hpp"
#include "qgauss/hecke.hpp"
#include "qgauss/json_io.hpp"
#include "qgauss/subsum.hpp"
#include "qgauss/weil.hpp"

namespace py = pybind11;
using namespace qgauss;

namespace {

Int to_int(const py::handle& obj) { return parse_int(py::str(obj).cast<std::string>()); }

Rational to_rat(const py::handle& obj) {
  return parse_rational(py::str(obj).cast<std::string>());
}

IntMat to_mat(const py::sequence& rows) {
  IntMat m;
  for (const py::handle& row : rows) {
    IntVec r;
    for (const py::handle& entry : row.cast<py::sequence>()) r.push_back(to_int(entry));
    m.push_back(std::move(r));
  }
  return m;
}

IntVec to_ivec(const py::sequence& seq) {
  IntVec v;
  for (const py::handle& entry : seq) v.push_back(to_int(entry));
  return v;
}

RatVec to_rvec(const py::sequence& seq) {
  RatVec v;
  for (const py::handle& entry : seq) v.push_back(to_rat(entry));
  return v;
}

std::string dump(const Cyclotomic& z) { return cyclotomic_to_json(z).dump(); }

py::object py_big_int(const Int& z) {
  return py::module_::import("builtins").attr("int")(z.get_str());
}

void register_exceptions(py::module_& m) {
  static py::exception<precondition_error> exc_pre(m, "PreconditionError");
  static py::exception<internal_error> exc_int(m, "InternalInconsistency");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const precondition_error& e) {
#if PYBIND11_VERSION_HEX >= 0x020C0000
      py::set_error(exc_pre, e.what());
#else
      exc_pre(e.what());
#endif
    } catch (const internal_error& e) {
#if PYBIND11_VERSION_HEX >= 0x020C0000
      py::set_error(exc_int, e.what());
#else
      exc_int(e.what());
#endif
    }
  });
}

}  // namespace

PYBIND11_MODULE(qgauss_py, m) {
  m.doc() = "exact quadratic Gauss sums, Weil matrices, and point counts";
  register_exceptions(m);

  m.def("set_threads", [](int k) { set_thread_count(k); }, py::arg("k"));

  m.def(
      "gauss_brute",
      [](const py::sequence& matrix, const py::object& a, const py::object& c,
         const py::sequence& w, const py::sequence& x) {
        EvenSymMatrix G = make_even_sym(to_mat(matrix));
        RatVec wv = py::len(w) == 0 ? RatVec(G.n, Rational(0)) : to_rvec(w);
        RatVec xv = py::len(x) == 0 ? RatVec(G.n, Rational(0)) : to_rvec(x);
        return dump(brute_gauss(make_gauss_spec(G, to_int(a), to_int(c), wv, xv)));
      },
      py::arg("matrix"), py::arg("a"), py::arg("c"), py::arg("w") = py::list(),
      py::arg("x") = py::list(),
      "Enumerates the central sum; returns the Cyclotomic JSON string.");

  m.def(
      "gauss_closed",
      [](const py::sequence& matrix, const py::object& a, const py::object& c,
         const py::sequence& w, const py::sequence& x) {
        EvenSymMatrix G = make_even_sym(to_mat(matrix));
        Int ai = to_int(a), ci = to_int(c);
        RatVec wv = py::len(w) == 0 ? RatVec(G.n, Rational(0)) : to_rvec(w);
        RatVec xv = py::len(x) == 0 ? RatVec(G.n, Rational(0)) : to_rvec(x);
        Int g;
        mpz_gcd(g.get_mpz_t(), ci.get_mpz_t(), G.level.get_mpz_t());
        if (g == 1) return dump(closed_gauss_coprime(G, ai, ci, wv, xv));
        if (ci % G.level == 0) return dump(closed_gauss_divides(G, ai, ci, wv, xv));
        throw precondition_error("no_closed_form",
                                 "gcd(N, c) is neither 1 nor N; use gauss_brute");
      },
      py::arg("matrix"), py::arg("a"), py::arg("c"), py::arg("w") = py::list(),
      py::arg("x") = py::list(),
      "Closed form of the central sum, dispatched by the gcd(N, c) regime.");

  m.def(
      "milgram",
      [](const py::sequence& matrix, const py::object& c) {
        return dump(milgram_extended(make_even_sym(to_mat(matrix)), to_int(c)));
      },
      py::arg("matrix"), py::arg("c"));

  m.def(
      "subsum_brute",
      [](const py::sequence& matrix, const py::object& a, const py::object& c,
         const py::sequence& w, const py::sequence& gens) {
        EvenSymMatrix G = make_even_sym(to_mat(matrix));
        Int ci = to_int(c);
        std::vector<IntVec> gv;
        for (const py::handle& row : gens) gv.push_back(to_ivec(row.cast<py::sequence>()));
        SubgroupModC H = make_subgroup(ci, G.n, gv);
        RatVec wv = py::len(w) == 0 ? RatVec(G.n, Rational(0)) : to_rvec(w);
        return dump(gauss_subsum_brute(G, to_int(a), ci, wv, H));
      },
      py::arg("matrix"), py::arg("a"), py::arg("c"), py::arg("w") = py::list(),
      py::arg("gens") = py::list());

  m.def(
      "hyperplane_closed",
      [](const py::sequence& matrix, const py::object& a, const py::object& c,
         const py::sequence& w, const py::sequence& h) {
        EvenSymMatrix G = make_even_sym(to_mat(matrix));
        RatVec wv = py::len(w) == 0 ? RatVec(G.n, Rational(0)) : to_rvec(w);
        return dump(hyperplane_subsum_closed(G, to_int(a), to_int(c), wv, to_ivec(h)));
      },
      py::arg("matrix"), py::arg("a"), py::arg("c"), py::arg("w"), py::arg("h"));

  m.def(
      "weil_word",
      [](const py::sequence& matrix, const std::string& word) {
        auto [mp2, mat] = weil_word(make_even_sym(to_mat(matrix)), word);
        (void)mp2;
        return weil_matrix_to_json(mat).dump();
      },
      py::arg("matrix"), py::arg("word"),
      "Product of Weil generator matrices for a word over S, T, s, t.");

  m.def(
      "weil_shintani",
      [](const py::sequence& matrix, const py::sequence& A) {
        return weil_matrix_to_json(weil_shintani(make_even_sym(to_mat(matrix)), to_mat(A)))
            .dump();
      },
      py::arg("matrix"), py::arg("A"));

  m.def(
      "count",
      [](const py::sequence& matrix, const py::sequence& v, const py::object& mm,
         const py::object& c, const std::string& method) {
        EvenSymMatrix G = make_even_sym(to_mat(matrix));
        IntVec vv = py::len(v) == 0 ? IntVec(G.n, Int(0)) : to_ivec(v);
        Int mi = to_int(mm), ci = to_int(c);
        Int out;
        if (method == "brute")
          out = count_quadric_brute(G, vv, mi, ci);
        else if (method == "prime")
          out = count_quadric_prime(G, vv, mi, ci);
        else if (method == "closed")
          out = count_quadric_closed_general(G, vv, mi, ci);
        else
          throw precondition_error("bad_method", "method must be brute, prime or closed");
        return py_big_int(out);
      },
      py::arg("matrix"), py::arg("v") = py::list(), py::arg("m") = 0, py::arg("c") = 1,
      py::arg("method") = "closed");

  m.def(
      "markoff",
      [](const py::sequence& coeffs, const py::object& p, const std::string& method) {
        IntVec co = to_ivec(coeffs);
        if (co.size() != 7)
          throw precondition_error("bad_coeffs", "expected a11,a22,a33,a12,a13,a23,d");
        MarkoffCoeffs mc = markoff_coeffs(co[0], co[1], co[2], co[3], co[4], co[5], co[6]);
        Int pi = to_int(p);
        return py_big_int(method == "brute" ? markoff_count_brute(mc, pi)
                                            : markoff_count_closed(mc, pi));
      },
      py::arg("coeffs"), py::arg("p"), py::arg("method") = "closed");

  m.def(
      "hecke_quad",
      [](const py::object& d, const py::object& v0, const py::object& v1, const py::object& c1) {
        return dump(hecke_quadratic(make_quad_hecke(to_int(d), to_int(v0), to_int(v1), to_int(c1))));
      },
      py::arg("d"), py::arg("v0"), py::arg("v1"), py::arg("c1"));

  m.def(
      "hecke_cyc",
      [](const py::object& p, const py::sequence& v, const py::object& c1) {
        return dump(hecke_cyclotomic(make_cyc_hecke(to_int(p), to_ivec(v), to_int(c1))));
      },
      py::arg("p"), py::arg("v"), py::arg("c1"));

  m.def(
      "cyclotomic_equal",
      [](const std::string& a, const std::string& b) {
        return cyclotomic_from_json(nlohmann::json::parse(a)) ==
               cyclotomic_from_json(nlohmann::json::parse(b));
      },
      py::arg("a"), py::arg("b"),
      "Exact equality of two serialized Cyclotomic values.");
}
