#include "qgauss/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qgauss {

using nlohmann::json;

json cyclotomic_to_json(const Cyclotomic& z, int digits) {
  const Cyclotomic c = z.canonical();
  json coeffs = json::array();
  for (long k = 0; k < c.conductor(); ++k) {
    const Rational& r = c.coeffs()[k];
    if (r != 0) coeffs.push_back(json::array({k, r.get_str()}));
  }
  const auto [re, im] = c.approx(digits);
  return json{{"conductor", c.conductor()},
              {"coeffs", coeffs},
              {"approx", json::array({re, im})},
              {"human", c.str()}};
}

Cyclotomic cyclotomic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
    throw precondition_error("bad_cyclotomic_json", "expected {\"conductor\", \"coeffs\", ...}");
  const long L = j.at("conductor").get<long>();
  if (L < 1) throw precondition_error("bad_cyclotomic_json", "conductor must be positive");
  RatVec coeffs(L, Rational(0));
  for (const auto& entry : j.at("coeffs")) {
    if (!entry.is_array() || entry.size() != 2)
      throw precondition_error("bad_cyclotomic_json", "coeff entries must be [k, \"p/q\"]");
    const long k = entry.at(0).get<long>();
    if (k < 0 || k >= L)
      throw precondition_error("bad_cyclotomic_json", "coeff index out of range");
    coeffs[k] = parse_rational(entry.at(1).get<std::string>());
  }
  return Cyclotomic::from_coeffs(L, std::move(coeffs));
}

json int_to_json(const Int& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

namespace {

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) parts.push_back(trimmed(cur));
  if (!s.empty() && s.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  try {
    Rational r(trimmed(s));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw precondition_error("bad_number", "cannot parse rational '" + s + "'");
  }
}

Int parse_int(const std::string& s) {
  try {
    return Int(trimmed(s));
  } catch (const std::invalid_argument&) {
    throw precondition_error("bad_number", "cannot parse integer '" + s + "'");
  }
}

IntVec parse_int_list(const std::string& s) {
  IntVec out;
  for (const std::string& part : split_commas(s)) out.push_back(parse_int(part));
  return out;
}

RatVec parse_rat_list(const std::string& s) {
  RatVec out;
  for (const std::string& part : split_commas(s)) out.push_back(parse_rational(part));
  return out;
}

namespace {

IntMat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw precondition_error("bad_matrix", "expected a nonempty JSON array of arrays");
  IntMat m;
  for (const auto& row : j) {
    if (!row.is_array()) throw precondition_error("bad_matrix", "rows must be arrays");
    IntVec r;
    for (const auto& entry : row) {
      if (entry.is_number_integer())
        r.emplace_back(entry.get<long>());
      else if (entry.is_string())
        r.push_back(parse_int(entry.get<std::string>()));
      else
        throw precondition_error("bad_matrix", "entries must be integers");
    }
    m.push_back(std::move(r));
  }
  return m;
}

json parse_json_text(const std::string& text, const char* code) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw precondition_error(code, "malformed JSON");
  return j;
}

}  // namespace

IntMat parse_matrix_arg(const std::string& arg) {
  const std::string t = trimmed(arg);
  if (!t.empty() && t.front() == '[') return matrix_from_json(parse_json_text(t, "bad_matrix"));
  std::ifstream in(t);
  if (!in) throw precondition_error("bad_matrix", "cannot open matrix file '" + t + "'");
  long n = 0;
  if (!(in >> n) || n < 1)
    throw precondition_error("bad_matrix", "matrix file must start with the dimension n");
  IntMat m(n, IntVec(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok))
        throw precondition_error("bad_matrix", "matrix file ends before n rows are read");
      m[i][j] = parse_int(tok);
    }
  return m;
}

SubgroupModC parse_subgroup_arg(const std::string& arg, const Int& c, int n) {
  std::string t = trimmed(arg);
  if (t.empty() || t.front() != '{') {
    std::ifstream in(t);
    if (!in) throw precondition_error("bad_subgroup", "cannot open subgroup file '" + t + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    t = buf.str();
  }
  json j = parse_json_text(t, "bad_subgroup");
  if (!j.is_object() || !j.contains("c") || !j.contains("gens"))
    throw precondition_error("bad_subgroup", "expected {\"c\": c, \"gens\": [[...], ...]}");
  Int jc = j.at("c").is_string() ? parse_int(j.at("c").get<std::string>())
                                 : Int(j.at("c").get<long>());
  if (jc != c)
    throw precondition_error("bad_subgroup", "subgroup modulus does not match --c");
  std::vector<IntVec> gens;
  for (const auto& row : j.at("gens")) {
    IntVec g;
    for (const auto& entry : row) {
      if (entry.is_number_integer())
        g.emplace_back(entry.get<long>());
      else
        g.push_back(parse_int(entry.get<std::string>()));
    }
    gens.push_back(std::move(g));
  }
  return make_subgroup(c, n, gens);
}

json weil_matrix_to_json(const WeilMatrix& m, int digits) {
  json elements = json::array();
  for (const IntVec& coords : m.module.fqm.elements()) {
    json row = json::array();
    for (const Int& x : coords) row.push_back(int_to_json(x));
    elements.push_back(row);
  }
  json entries = json::array();
  for (const auto& row : m.entries) {
    json jrow = json::array();
    for (const Cyclotomic& z : row) jrow.push_back(cyclotomic_to_json(z, digits));
    entries.push_back(jrow);
  }
  return json{{"orders", m.module.orders}, {"elements", elements}, {"entries", entries}};
}

}  // namespace qgauss
