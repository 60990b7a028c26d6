#include "json_io.hpp"

#include <stdexcept>

namespace aomega::io {

namespace {

template <class E, class Fmt>
Json homology_json(const HomologyPresentation<E>& h, Fmt fmt) {
  Json out = Json::object();
  for (const auto& [degree, g] : h.groups) {
    if (g.is_zero()) continue;
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(fmt(t));
    out[std::to_string(degree)] = {{"free_rank", g.free_rank}, {"torsion", torsion}};
  }
  return out;
}

Json terms_json(const std::map<RationalExponent, std::int64_t>& terms) {
  Json out = Json::array();
  for (const auto& [e, c] : terms) out.push_back({{"exponent", e.to_string()}, {"coeff", std::to_string(c)}});
  return out;
}

std::int64_t residue(const Integer& c, std::int64_t modulus) {
  Integer r = c % Integer(std::to_string(modulus));
  if (r < 0) r += modulus;
  return r.get_si();
}

}  // namespace

Json to_json(const SessionConfig& c) {
  return {{"p", c.p}, {"depth", c.depth},         {"dim", c.dim},
          {"bound", c.bound}, {"precision", c.precision}, {"seed", std::to_string(c.seed)}};
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks()) {
    Json item = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  return {{"name", r.name()}, {"passed", r.passed()}, {"failures", r.failures()}, {"checks", checks}};
}

Json to_json(const SuiteOutcome& s) {
  return {{"suite", s.suite},
          {"seed", std::to_string(s.config.seed)},
          {"config", to_json(s.config)},
          {"instances", s.instances},
          {"passed", s.report.passed()},
          {"report", to_json(s.report)}};
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const IntComplex& k) {
  Json diffs = Json::array();
  for (const auto& d : k.diffs()) diffs.push_back(to_json(d));
  return {{"lo", k.lo()}, {"ranks", k.ranks()}, {"diffs", diffs}};
}

Json to_json(const HomologyPresentation<Integer>& h) {
  return homology_json(h, [](const Integer& x) { return to_string(x); });
}

Json to_json(const TorusHomology& h) {
  return homology_json(h, [](const std::string& s) { return s; });
}

Json to_json(const std::map<int, std::size_t>& table) {
  Json out = Json::object();
  for (const auto& [degree, n] : table) out[std::to_string(degree)] = n;
  return out;
}

Json to_json(const TorusCell& cell) {
  Json out = {{"present", cell.present}, {"homology", to_json(cell.homology)}, {"leta", cell.leta}};
  Json twist = Json::object();
  for (const auto& [degree, t] : cell.twist) twist[std::to_string(degree)] = t;
  out["twist"] = twist;
  if (!cell.note.empty()) out["note"] = cell.note;
  return out;
}

Json to_json(const TorusCohomologyResult& r) {
  const auto& b = r.box;
  Json classes = Json::array();
  std::vector<std::size_t> count(r.classes.size(), 0);
  for (auto c : r.cell_class) ++count[c];
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    Json item = to_json(r.classes[c]);
    item["id"] = c;
    item["gradings"] = count[c];
    classes.push_back(item);
  }
  Json cells = Json::array();
  for (std::size_t i = 0; i < r.cell_class.size(); ++i) {
    if (r.cell(i).homology.is_zero()) continue;
    Json grading = Json::array();
    for (const auto& e : b.grading(i)) grading.push_back(e.to_string());
    cells.push_back({{"grading", grading}, {"class", r.cell_class[i]}});
  }
  return {{"stage", r.stage},
          {"ring", r.ring},
          {"box", {{"p", b.prime()}, {"dim", b.dim()}, {"depth", b.depth()}, {"bound", b.bound()}, {"gradings", b.size()}}},
          {"free_rank_table", to_json(r.free_rank_table())},
          {"nonzero_cells", r.nonzero_cells()},
          {"classes", classes},
          {"cells", cells},
          {"problems", r.problems}};
}

Json to_json(const SemicontinuityResult& s) {
  Json verdict = Json::object();
  for (const auto& [degree, v] : s.verdict) verdict[std::to_string(degree)] = to_string(v);
  return {{"generic", to_json(s.generic)},
          {"special", to_json(s.special)},
          {"verdict", verdict},
          {"holds", s.holds()},
          {"all_equal", s.all_equal()}};
}

Json to_json(const PerfectionElement& a) { return {{"p", a.prime()}, {"terms", terms_json(a.terms())}}; }

Json to_json(const TruncatedWittElement& w) {
  return {{"p", w.prime()}, {"precision", w.precision()}, {"terms", terms_json(w.terms())}};
}

Integer integer_from_json(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  throw std::invalid_argument("expected an integer or a decimal string, got " + j.dump());
}

RationalExponent exponent_from_string(std::int64_t p, const std::string& s) {
  const auto slash = s.find('/');
  try {
    const std::int64_t num = std::stoll(s.substr(0, slash));
    if (slash == std::string::npos) return RationalExponent(p, num);
    std::int64_t den = std::stoll(s.substr(slash + 1));
    int k = 0;
    for (; den > 1 && den % p == 0; den /= p) ++k;
    if (den != 1) throw std::invalid_argument("denominator is not a power of " + std::to_string(p));
    return RationalExponent(p, num, k);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("bad exponent '" + s + "': " + e.what());
  }
}

IntComplex int_complex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ranks")) throw std::invalid_argument("complex: expected an object with \"ranks\"");
  const int lo = j.value("lo", 0);
  const auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
  std::vector<IntMatrix> diffs;
  if (j.contains("diffs"))
    for (const auto& d : j.at("diffs")) {
      const std::size_t k = diffs.size();
      if (k + 1 >= ranks.size()) throw std::invalid_argument("complex: more differentials than degrees allow");
      IntMatrix m = int_matrix(ranks[k + 1], ranks[k]);
      if (d.size() != m.rows()) throw std::invalid_argument("complex: d^" + std::to_string(lo + static_cast<int>(k)) + " has the wrong number of rows");
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (d[r].size() != m.cols()) throw std::invalid_argument("complex: ragged row in d^" + std::to_string(lo + static_cast<int>(k)));
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = integer_from_json(d[r][c]);
      }
      diffs.push_back(std::move(m));
    }
  return IntComplex(IntegerRing{}, lo, ranks, std::move(diffs));
}

TruncatedWittElement witt_from_json(const Json& j, std::int64_t p, int precision) {
  if (j.is_string() || j.is_number_integer()) {
    const TruncatedWittElement probe(p, precision);
    return TruncatedWittElement::constant(p, precision, residue(integer_from_json(j), probe.modulus()));
  }
  if (!j.is_object() || !j.contains("terms")) throw std::invalid_argument("witt: expected an integer or {\"terms\": [...]}");
  const TruncatedWittElement probe(p, precision);
  TruncatedWittElement::Terms terms;
  for (const auto& t : j.at("terms")) {
    const auto e = exponent_from_string(p, t.at("exponent").get<std::string>());
    if (e.numerator() < 0) throw std::invalid_argument("witt: negative exponent " + e.to_string());
    terms[e] = (terms[e] + residue(integer_from_json(t.at("coeff")), probe.modulus())) % probe.modulus();
  }
  return TruncatedWittElement(p, precision, terms);
}

}  // namespace aomega::io
