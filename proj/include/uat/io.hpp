#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uat/base_change.hpp"
#include "uat/cross_check.hpp"
#include "uat/fundamentality.hpp"

namespace uat {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Field specification grammar: QQ | GF(p), then [name]/(minpoly) chains,
// e.g. QQ[i]/(i^2+1) or GF(2)[w]/(w^2+w+1)[v]/(v^2+w).
// ---------------------------------------------------------------------------

inline TowerPtr parse_field_spec(const std::string& text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("field spec: " + msg, 1, i + 1);
  };
  skip();
  TowerPtr tower;
  if (text.compare(i, 2, "QQ") == 0) {
    tower = FieldTower::rationals();
    i += 2;
  } else if (text.compare(i, 3, "GF(") == 0) {
    i += 3;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) fail("expected a prime after GF(");
    std::uint32_t p = static_cast<std::uint32_t>(
        std::stoul(text.substr(start, i - start)));
    skip();
    if (i >= text.size() || text[i] != ')') fail("expected ')'");
    ++i;
    tower = FieldTower::prime_field(p);
  } else {
    fail("expected QQ or GF(p)");
  }
  skip();
  while (i < text.size()) {
    if (text[i] != '[') fail("expected '[' starting an extension step");
    ++i;
    std::size_t start = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
      ++i;
    if (i == start) fail("expected a generator name");
    std::string name = text.substr(start, i - start);
    if (i >= text.size() || text[i] != ']') fail("expected ']'");
    ++i;
    skip();
    if (i >= text.size() || text[i] != '/') fail("expected '/'");
    ++i;
    skip();
    if (i >= text.size() || text[i] != '(') fail("expected '('");
    ++i;
    // the minimal polynomial runs to the matching ')'
    std::size_t depth = 1, stop = i;
    while (stop < text.size() && depth > 0) {
      if (text[stop] == '(') ++depth;
      if (text[stop] == ')') --depth;
      ++stop;
    }
    if (depth != 0) fail("unbalanced parentheses in minimal polynomial");
    std::string mp_text = text.substr(i, stop - i - 1);
    i = stop;
    CtxPtr mp_ctx = make_context(tower, {name}, MonomialOrder::lex());
    MultiPoly mp = parse_poly(mp_text, mp_ctx);
    if (mp.is_zero() || !mp.total_degree() || *mp.total_degree() < 1)
      throw MalformedExtension("minimal polynomial of '" + name +
                               "' must have degree >= 1");
    std::vector<FieldElement> coeffs(
        static_cast<std::size_t>(*mp.total_degree()) + 1, tower->zero());
    for (const auto& t : mp.terms()) coeffs[t.mono.e[0]] = t.coeff;
    tower = tower->extend(name, coeffs);
    skip();
  }
  return tower;
}

// ---------------------------------------------------------------------------
// .ideal files
// ---------------------------------------------------------------------------

/// Parsed ideal file: field spec, ordered variables, order, generator list,
/// optional rational points on the zero set. Unknown keys are rejected.
struct IdealFile {
  std::string field_text = "QQ";
  std::vector<std::string> vars;
  std::string order_text = "grevlex";
  std::vector<std::string> ideal_texts;
  std::vector<std::vector<std::string>> point_texts;

  TowerPtr tower;
  MonomialOrder order;
  CtxPtr ctx;
  std::vector<MultiPoly> gens;
  std::vector<std::vector<FieldElement>> points;
};

inline MonomialOrder parse_order_name(const std::string& s) {
  if (s == "lex") return MonomialOrder::lex();
  if (s == "grevlex") return MonomialOrder::grevlex();
  if (s.rfind("block(", 0) == 0 && s.back() == ')') {
    std::size_t k = std::stoul(s.substr(6, s.size() - 7));
    return MonomialOrder::block_elimination(k);
  }
  throw ParseError("unknown order '" + s + "' (expected lex, grevlex, block(k))",
                   1, 1);
}

namespace io_detail {

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

/// Parse a constant field-element expression (no ring variables).
inline FieldElement parse_constant(const std::string& text, const TowerPtr& tower) {
  CtxPtr c0 = make_context(tower, {});
  MultiPoly p = parse_poly(text, c0);
  auto v = p.constant_value();
  if (!v) throw ParseError("expected a constant field element", 1, 1);
  return *v;
}

}  // namespace io_detail

inline IdealFile parse_ideal_file_text(const std::string& text) {
  IdealFile f;
  bool saw_field = false, saw_vars = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> pending_points;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = io_detail::strip(line);
    if (s.empty() || s[0] == '#') continue;
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", lineno, 1);
    std::string key = io_detail::strip(s.substr(0, colon));
    std::string value = io_detail::strip(s.substr(colon + 1));
    if (key == "field") {
      f.field_text = value;
      saw_field = true;
    } else if (key == "vars") {
      for (const auto& v : io_detail::split(value, ',')) {
        if (v.empty()) throw ParseError("empty variable name", lineno, 1);
        f.vars.push_back(v);
      }
      saw_vars = true;
    } else if (key == "order") {
      f.order_text = value;
    } else if (key == "ideal") {
      for (const auto& g : io_detail::split(value, ';'))
        if (!g.empty()) f.ideal_texts.push_back(g);
    } else if (key == "point") {
      pending_points.emplace_back(lineno, io_detail::split(value, ','));
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!saw_field) throw ParseError("missing 'field:' line", lineno, 1);
  if (!saw_vars) throw ParseError("missing 'vars:' line", lineno, 1);
  if (f.ideal_texts.empty()) throw ParseError("missing 'ideal:' line", lineno, 1);
  f.tower = parse_field_spec(f.field_text);
  f.order = parse_order_name(f.order_text);
  f.ctx = make_context(f.tower, f.vars, f.order);
  for (const auto& g : f.ideal_texts) f.gens.push_back(parse_poly(g, f.ctx));
  for (const auto& [ln, coords] : pending_points) {
    if (coords.size() != f.vars.size())
      throw ParseError("point has " + std::to_string(coords.size()) +
                           " coordinates, expected " + std::to_string(f.vars.size()),
                       ln, 1);
    std::vector<FieldElement> pt;
    for (const auto& ctext : coords)
      pt.push_back(io_detail::parse_constant(ctext, f.tower));
    f.point_texts.push_back(coords);
    f.points.push_back(std::move(pt));
  }
  return f;
}

inline IdealFile load_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ideal file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ideal_file_text(ss.str());
}

inline IdealPtr make_ideal(const IdealFile& f, const Budget& budget = {}) {
  return share(IdealContext::make(f.ctx, f.gens, budget));
}

// ---------------------------------------------------------------------------
// .pts files: a field header shared with the ideal format, then one point per
// line as comma-separated field-element expressions.
// ---------------------------------------------------------------------------

struct PointsFile {
  std::string field_text = "QQ";
  TowerPtr tower;
  std::vector<std::vector<std::string>> point_texts;
  PointSet set;
};

inline PointsFile parse_points_file_text(const std::string& text) {
  PointsFile f;
  bool saw_field = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<FieldElement>> pts;
  std::optional<std::size_t> dim;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = io_detail::strip(line);
    if (s.empty() || s[0] == '#') continue;
    auto colon = s.find(':');
    bool is_header = false;
    if (colon != std::string::npos) {
      std::string key = io_detail::strip(s.substr(0, colon));
      bool word = !key.empty();
      for (char c : key)
        word = word && (std::isalpha(static_cast<unsigned char>(c)) || c == '_');
      if (word) {
        is_header = true;
        std::string value = io_detail::strip(s.substr(colon + 1));
        if (key == "field") {
          f.field_text = value;
          saw_field = true;
        } else {
          throw ParseError("unknown key '" + key + "'", lineno, 1);
        }
      }
    }
    if (is_header) continue;
    if (!saw_field) throw ParseError("points before the 'field:' header", lineno, 1);
    if (!f.tower) f.tower = parse_field_spec(f.field_text);
    auto coords = io_detail::split(s, ',');
    if (!dim) dim = coords.size();
    if (coords.size() != *dim)
      throw ParseError("inconsistent point dimension", lineno, 1);
    std::vector<FieldElement> pt;
    for (const auto& ctext : coords)
      pt.push_back(io_detail::parse_constant(ctext, f.tower));
    f.point_texts.push_back(coords);
    pts.push_back(std::move(pt));
  }
  if (!saw_field) throw ParseError("missing 'field:' header", lineno, 1);
  if (!f.tower) f.tower = parse_field_spec(f.field_text);
  f.set = PointSet::make(f.tower, dim.value_or(0), std::move(pts));
  return f;
}

inline PointsFile load_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open points file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_points_file_text(ss.str());
}

// ---------------------------------------------------------------------------
// JSON reports (schema 1). Every polynomial and field element is exact text.
// ---------------------------------------------------------------------------

inline Json input_echo(const IdealFile& f) {
  Json j;
  j["kind"] = "ideal";
  j["field"] = f.field_text;
  j["vars"] = f.vars;
  j["order"] = f.order_text;
  j["ideal"] = f.ideal_texts;
  if (!f.point_texts.empty()) j["points"] = f.point_texts;
  return j;
}

inline Json input_echo(const PointsFile& f) {
  Json j;
  j["kind"] = "points";
  j["field"] = f.field_text;
  j["points"] = f.point_texts;
  return j;
}

inline Json pool_echo(const CoeffPool& pool) {
  Json j;
  j["description"] = pool.description;
  std::vector<std::string> vals;
  for (const auto& v : pool.values) vals.push_back(v.to_string());
  j["values"] = vals;
  return j;
}

inline Json classification_json(const Classification& cl) {
  Json j;
  j["verdict"] = cl.verdict_name();
  if (cl.inverse) j["inverse"] = poly_to_string(*cl.inverse);
  if (cl.nilpotent_exponent) j["nilpotent_exponent"] = *cl.nilpotent_exponent;
  if (!cl.non_unit_evidence.empty()) {
    std::vector<std::string> b;
    for (const auto& g : cl.non_unit_evidence) b.push_back(poly_to_string(g));
    j["non_unit_evidence_basis"] = b;
  }
  if (!cl.non_nilpotent_evidence.empty()) {
    std::vector<std::string> b;
    for (const auto& g : cl.non_nilpotent_evidence) b.push_back(poly_to_string(g));
    j["non_nilpotent_evidence_basis"] = b;
  }
  if (!cl.diagnostics.empty()) j["diagnostics"] = cl.diagnostics;
  return j;
}

inline Json witness_report_json(const WitnessReport& rep, const char* witness_kind) {
  Json j;
  switch (rep.outcome) {
    case WitnessReport::Outcome::witness: j["outcome"] = "witness"; break;
    case WitnessReport::Outcome::exhausted: j["outcome"] = "exhausted"; break;
    case WitnessReport::Outcome::aborted: j["outcome"] = "aborted"; break;
  }
  j["candidates_tried"] = rep.candidates_tried;
  j["units_found"] = rep.units_found;
  j["search_space"] = rep.search_space;
  if (!rep.diagnostics.empty()) j["diagnostics"] = rep.diagnostics;
  if (rep.witness) {
    Json w;
    w["kind"] = witness_kind;
    w["u"] = poly_to_string(*rep.witness);
    if (rep.witness_inverse) w["inverse"] = poly_to_string(*rep.witness_inverse);
    if (rep.successor) w["u_plus_1"] = classification_json(*rep.successor);
    j["witness"] = w;
  }
  return j;
}

inline Json certificate_json(const DecompositionCertificate& cert) {
  Json j;
  j["kind"] = "crt-certificate";
  j["verified"] = cert.verified;
  j["squarefree_minpolys"] = cert.squarefree_minpolys;
  std::vector<Json> comps;
  for (const auto& comp : cert.components) {
    Json cj;
    std::vector<std::string> gb;
    for (const auto& g : comp->gb()) gb.push_back(poly_to_string(g));
    cj["reduced_basis"] = gb;
    cj["staircase_dimension"] =
        is_zero_dimensional(*comp) ? Json(quotient_basis(*comp).size()) : Json();
    comps.push_back(cj);
  }
  j["components"] = comps;
  std::vector<Json> cofs;
  for (const auto& pc : cert.cofactors) {
    Json pj;
    pj["j"] = pc.j;
    pj["k"] = pc.k;
    pj["a"] = poly_to_string(pc.a);
    pj["b"] = poly_to_string(pc.b);
    cofs.push_back(pj);
  }
  j["comaximality_cofactors"] = cofs;
  if (!cert.notes.empty()) j["notes"] = cert.notes;
  return j;
}

inline Json ua_verdict_json(const UAVerdict& v) {
  Json j;
  j["unit_additive"] = tri_name(v.ua);
  j["locally_unit_additive"] = tri_name(v.locally_ua);
  j["uu"] = tri_name(v.uu);
  j["provenance"] = v.provenance;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness) {
    Json w;
    w["kind"] = "ua-witness";
    w["u"] = poly_to_string(*v.witness);
    if (v.witness_successor)
      w["u_plus_1"] = classification_json(*v.witness_successor);
    j["witness"] = w;
  }
  if (v.cert) j["certificate"] = certificate_json(*v.cert);
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

inline Json fundamentality_json(const FundamentalityVerdict& v) {
  Json j;
  j["fundamental"] = tri_name(v.fundamental);
  j["locally_fundamental"] = tri_name(v.locally_fundamental);
  j["provenance"] = v.provenance;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness) {
    Json w;
    w["kind"] = "fundamental-witness";
    w["f"] = poly_to_string(*v.witness);
    if (!v.witness_values.empty()) w["values_at_points"] = v.witness_values;
    j["witness"] = w;
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

inline Json make_report(const std::string& command, Json input, Json result,
                        const Budget& budget,
                        const std::vector<std::string>& assumptions, int exit_code) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["input"] = std::move(input);
  j["result"] = std::move(result);
  Json b;
  b["max_pair_reductions"] = budget.max_pair_reductions;
  b["max_total_degree"] = budget.max_total_degree;
  b["max_candidates"] = budget.max_candidates;
  b["factor_degree_budget"] = budget.factor_degree_budget;
  b["seed"] = budget.seed;
  j["budgets"] = b;
  j["assumptions"] = assumptions;
  j["exit_code"] = exit_code;
  return j;
}

// ---------------------------------------------------------------------------
// Self-audit: re-verify every witness and certificate in a report.
// ---------------------------------------------------------------------------

struct AuditResult {
  bool ok = true;
  std::vector<std::string> messages;
  long witnesses_checked = 0;
  long certificates_checked = 0;
  void fail(const std::string& msg) {
    ok = false;
    messages.push_back("MISMATCH: " + msg);
  }
  void note(const std::string& msg) { messages.push_back(msg); }
};

namespace io_detail {

inline IdealFile file_from_echo(const Json& input) {
  IdealFile f;
  f.field_text = input.at("field").get<std::string>();
  f.vars = input.at("vars").get<std::vector<std::string>>();
  f.order_text = input.value("order", "grevlex");
  f.ideal_texts = input.at("ideal").get<std::vector<std::string>>();
  f.tower = parse_field_spec(f.field_text);
  f.order = parse_order_name(f.order_text);
  f.ctx = make_context(f.tower, f.vars, f.order);
  for (const auto& g : f.ideal_texts) f.gens.push_back(parse_poly(g, f.ctx));
  return f;
}

inline void audit_witness(const Json& w, const IdealPtr& I, const Json& report,
                          AuditResult& out) {
  const std::string kind = w.value("kind", "");
  ++out.witnesses_checked;
  if (kind == "ua-witness") {
    MultiPoly u = parse_poly(w.at("u").get<std::string>(), I->ctx());
    std::string why;
    if (!verify_ua_witness(I, u, &why)) {
      out.fail("ua-witness " + w.at("u").get<std::string>() + ": " + why);
      return;
    }
    if (w.contains("inverse")) {
      MultiPoly v = parse_poly(w.at("inverse").get<std::string>(), I->ctx());
      MultiPoly one = MultiPoly::constant(I->ctx(), I->ctx()->tower->one());
      if (!I->reduce(u * v - one).is_zero()) {
        out.fail("recorded inverse does not verify for " +
                 w.at("u").get<std::string>());
        return;
      }
    }
    out.note("ua-witness " + w.at("u").get<std::string>() + " re-verified");
  } else if (kind == "uu-witness") {
    MultiPoly u = parse_poly(w.at("u").get<std::string>(), I->ctx());
    std::string why;
    if (!verify_uu_witness(I, u, &why))
      out.fail("uu-witness " + w.at("u").get<std::string>() + ": " + why);
    else
      out.note("uu-witness " + w.at("u").get<std::string>() + " re-verified");
  } else if (kind == "fundamental-witness") {
    MultiPoly f = parse_poly(w.at("f").get<std::string>(), I->ctx());
    CoeffPool pool;
    pool.description = "pool from report";
    if (report.contains("params") && report["params"].contains("pool")) {
      for (const auto& v : report["params"]["pool"]["values"])
        pool.values.push_back(io_detail::parse_constant(v.get<std::string>(),
                                                        I->ctx()->tower));
    } else {
      pool.values.push_back(I->ctx()->tower->zero());
      pool.values.push_back(I->ctx()->tower->one());
    }
    std::string why;
    if (!verify_fundamental_witness(*I, f, pool, &why))
      out.fail("fundamental-witness " + w.at("f").get<std::string>() + ": " + why);
    else
      out.note("fundamental-witness " + w.at("f").get<std::string>() +
               " re-verified");
  } else {
    out.fail("unknown witness kind '" + kind + "'");
  }
}

inline void audit_certificate(const Json& cj, const IdealPtr& I, AuditResult& out) {
  ++out.certificates_checked;
  DecompositionCertificate cert;
  cert.ambient = I;
  for (const auto& comp : cj.at("components")) {
    std::vector<MultiPoly> gens;
    for (const auto& g : comp.at("reduced_basis"))
      gens.push_back(parse_poly(g.get<std::string>(), I->ctx()));
    cert.components.push_back(
        share(IdealContext::make(I->ctx(), std::move(gens), I->budget())));
  }
  for (const auto& pc : cj.at("comaximality_cofactors")) {
    cert.cofactors.push_back(
        PairCofactor{pc.at("j").get<std::size_t>(), pc.at("k").get<std::size_t>(),
                     parse_poly(pc.at("a").get<std::string>(), I->ctx()),
                     parse_poly(pc.at("b").get<std::string>(), I->ctx())});
  }
  try {
    verify_crt(cert);
    out.note("crt-certificate with " + std::to_string(cert.components.size()) +
             " components re-verified");
  } catch (const CertificateError& e) {
    out.fail(std::string("certificate: ") + e.what());
  }
}

inline void walk_for_audit(const Json& node, const IdealPtr& I, const Json& report,
                           AuditResult& out) {
  if (node.is_object()) {
    if (node.contains("kind") && node["kind"].is_string()) {
      std::string kind = node["kind"].get<std::string>();
      if (kind == "ua-witness" || kind == "uu-witness" ||
          kind == "fundamental-witness") {
        audit_witness(node, I, report, out);
        return;
      }
      if (kind == "crt-certificate") {
        audit_certificate(node, I, out);
        return;
      }
    }
    for (const auto& [key, value] : node.items()) {
      (void)key;
      walk_for_audit(value, I, report, out);
    }
  } else if (node.is_array()) {
    for (const auto& item : node) walk_for_audit(item, I, report, out);
  }
}

}  // namespace io_detail

/// Re-verifies every witness and certificate found in a report against a
/// fresh ingestion of the echoed input.
inline AuditResult self_audit(const Json& report) {
  AuditResult out;
  if (report.value("schema", 0) != 1) {
    out.fail("unsupported schema");
    return out;
  }
  const Json& input = report.at("input");
  if (input.value("kind", "") == "points") {
    // point-set reports: re-evaluate the recorded witness at the points
    PointsFile pf;
    pf.field_text = input.at("field").get<std::string>();
    pf.tower = parse_field_spec(pf.field_text);
    std::vector<std::vector<FieldElement>> pts;
    for (const auto& row : input.at("points")) {
      std::vector<FieldElement> pt;
      for (const auto& ctext : row)
        pt.push_back(
            io_detail::parse_constant(ctext.get<std::string>(), pf.tower));
      pts.push_back(std::move(pt));
    }
    if (report.contains("result") && report["result"].contains("witness")) {
      ++out.witnesses_checked;
      std::size_t dim = pts.empty() ? 1 : pts[0].size();
      std::vector<std::string> names;
      for (std::size_t v = 0; v < dim; ++v)
        names.push_back(dim == 1 ? "X" : "X" + std::to_string(v + 1));
      CtxPtr ctx = make_context(pf.tower, names);
      MultiPoly f = parse_poly(
          report["result"]["witness"].at("f").get<std::string>(), ctx);
      std::vector<std::string> values;
      bool nonzero = true;
      for (const auto& pt : pts) {
        FieldElement v = f.evaluate(pt);
        nonzero = nonzero && !v.is_zero();
        values.push_back(v.to_string());
      }
      bool distinct = false;
      for (const auto& v : values) distinct = distinct || v != values[0];
      if (!nonzero)
        out.fail("point witness vanishes at a point");
      else if (!distinct)
        out.fail("point witness is constant on the set");
      else
        out.note("point witness re-verified");
    }
    return out;
  }
  IdealFile f = io_detail::file_from_echo(input);
  Budget budget;
  if (report.contains("budgets")) {
    const Json& b = report["budgets"];
    budget.max_pair_reductions =
        b.value("max_pair_reductions", budget.max_pair_reductions);
    budget.max_total_degree = b.value("max_total_degree", budget.max_total_degree);
    budget.seed = b.value("seed", budget.seed);
  }
  IdealPtr I = make_ideal(f, budget);
  io_detail::walk_for_audit(report.at("result"), I, report, out);
  if (out.witnesses_checked == 0 && out.certificates_checked == 0)
    out.note("nothing to audit: the report contains no witnesses or certificates");
  return out;
}

}  // namespace uat
